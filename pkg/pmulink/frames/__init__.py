from .crc import *
from .codec import *
from .golden import *
