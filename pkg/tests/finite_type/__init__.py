# Finite type tests package
