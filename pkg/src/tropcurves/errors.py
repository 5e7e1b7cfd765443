class ScaleRefusal(Exception):
    """Raised when an operation is asked to run beyond its certified scale bound."""
