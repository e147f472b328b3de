"""Model front ends: weights, zero-free radii and rescaling for each polynomial."""
