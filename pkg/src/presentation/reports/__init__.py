from .exceptions import ReportGenerationError
from .generators import CSVReportGenerator, JSONReportGenerator, SVGReportGenerator, generator_for
