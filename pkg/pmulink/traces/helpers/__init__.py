from .history import *
from .help import *
from .get import *
from .save import *
