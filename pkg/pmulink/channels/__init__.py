from .config import *
from .events import *
from .catm import *
