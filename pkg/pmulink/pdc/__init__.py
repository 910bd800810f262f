from .concentrator import *
from .server import *
