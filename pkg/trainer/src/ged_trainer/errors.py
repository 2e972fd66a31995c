class TrainerError(Exception):
    """Configuration, data, or model-shape problem that must abort the run."""
