"""Utils package"""
from utils.logger import logger, setup_logger, set_level
