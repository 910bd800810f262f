from .figures import *
from .experiment import *
from .client import *
from .cli import main
