# Reduced series tests package
