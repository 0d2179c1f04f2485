from config.config import *
