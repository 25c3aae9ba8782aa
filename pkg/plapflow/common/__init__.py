"""
Common Constants, Exceptions
"""

from .constants import *
from .exceptions import *
