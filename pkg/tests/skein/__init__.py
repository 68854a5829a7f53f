# Skein tests package
