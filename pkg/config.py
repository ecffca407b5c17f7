import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    LOG_LEVEL = os.getenv("LIEPOISSON_LOG_LEVEL", "WARNING").upper()

    # Sampling
    COORD_BOUND = int(os.getenv("LIEPOISSON_COORD_BOUND", "20"))
    RETRY_BUDGET = int(os.getenv("LIEPOISSON_RETRY_BUDGET", "64"))

    # Parallel certificates; 1 runs them in order on the calling thread
    MAX_WORKERS = int(os.getenv("LIEPOISSON_MAX_WORKERS", "1"))

    # Seeds are explicit flags only
    DEFAULT_SEED = 42
    DEFAULT_SAMPLES = 16
