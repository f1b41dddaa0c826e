"""Wilson polynomials, Wilson functions, and their integral transforms."""
