class ReportGenerationError(Exception):
    """Raised when rendering a result fails"""
    pass
