# Diagram tests package
