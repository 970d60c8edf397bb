from dotenv import load_dotenv
import os

load_dotenv()  # Loads variables from .env into environment

BIPHOTON_LOG_LEVEL = os.getenv('BIPHOTON_LOG_LEVEL', 'WARNING')
BIPHOTON_LOGGING_INI = os.getenv('BIPHOTON_LOGGING_INI', 'logging.ini')

BIPHOTON_QUAD_HALF_WIDTH = float(os.getenv('BIPHOTON_QUAD_HALF_WIDTH', '12'))
BIPHOTON_QUAD_POINTS = int(os.getenv('BIPHOTON_QUAD_POINTS', '4096'))

BIPHOTON_GRID_POINTS = int(os.getenv('BIPHOTON_GRID_POINTS', '400'))
BIPHOTON_DATA_PATH = os.getenv('BIPHOTON_DATA_PATH', 'data/fig5_experimental.csv')
