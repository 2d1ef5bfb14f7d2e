from .exceptions import *
from .models import ExprAst, to_source
from .parser import parse, substitute_parameter
from .evaluator import eval_expr
