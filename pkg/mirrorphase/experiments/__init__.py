"""Monte Carlo sweeps and the published experiment presets."""
