"""Process settings loaded from environment variables."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Environment-level settings. Experiment hyperparameters live in RunSpec."""

    model_config = SettingsConfigDict(
        env_prefix="PCTRAIN_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # -- Logging --
    log_level: str = "INFO"

    # -- Output files --
    metrics_filename: str = "metrics.csv"
    checkpoint_filename: str = "model.ckpt"
    baseline_checkpoint_filename: str = "baseline.ckpt"
    summary_filename: str = "summary.txt"

    # -- Evaluation --
    eval_batch_size: int = 1024


settings = Settings()
