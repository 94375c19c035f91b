"""
Application configuration settings.
"""
from typing import Literal
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""
    
    # Application settings
    app_name: str = "QKD Net-Key Audit"
    debug: bool = False
    
    # Output settings
    output_format: Literal["csv", "json"] = "json"
    precision: int = 6
    
    # Rate accounting defaults
    efficiency_factor: float = 1.1
    mu: float = 0.0
    
    # Simulator defaults
    check_fraction: float = 0.25
    sweep_workers: int = 1
    random_trials: int = 1000
    
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="QKD_AUDIT_",
        case_sensitive=False
    )


# Global settings instance
settings = Settings()
