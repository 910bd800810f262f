from .to_df import *
