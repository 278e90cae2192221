"""Interior polynomials of signed bipartite graphs."""
