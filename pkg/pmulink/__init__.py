from .version import __version__, version
from .imports import *
from .configuration import *
from .signals import *
from .frames import *
from .channels import *
from .traces import *
from .pdc import *
from .harness import *
