import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

class Settings:
    """
    Application settings

    Reads settings from environment variables or .env file
    """
    PROJECT_NAME: str = "graphcert"

    # Certificate wire format
    CERTIFICATE_VERSION: str = "1"

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Dense oracles refuse Hilbert spaces larger than this
    DENSE_LIMIT: int = int(os.getenv("GRAPHCERT_DENSE_LIMIT", "4096"))

    # Tolerances
    TOLERANCE: float = float(os.getenv("GRAPHCERT_TOLERANCE", "1e-9"))
    ORACLE_TOLERANCE: float = float(os.getenv("GRAPHCERT_ORACLE_TOLERANCE", "1e-10"))
    MATRIX_TOLERANCE: float = float(os.getenv("GRAPHCERT_MATRIX_TOLERANCE", "1e-12"))
    IDENTITY_TOLERANCE: float = float(os.getenv("GRAPHCERT_IDENTITY_TOLERANCE", "1e-8"))

    # Input size caps for graph files and certificates
    MAX_VERTICES: int = int(os.getenv("GRAPHCERT_MAX_VERTICES", "64"))
    MAX_DIMENSION: int = int(os.getenv("GRAPHCERT_MAX_DIMENSION", "997"))

    # Self-test defaults
    DEFAULT_SEED: int = int(os.getenv("GRAPHCERT_SEED", "20240917"))
    SELFTEST_MAX_D: int = int(os.getenv("GRAPHCERT_SELFTEST_MAX_D", "7"))

# Create settings instance
settings = Settings()
