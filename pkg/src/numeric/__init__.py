"""Dense float64 tensor arithmetic and seeded random generation."""
