from .run_config import apply_overrides, default_run_config, load_run_config, resolve_parameters

__all__ = ["apply_overrides", "default_run_config", "load_run_config", "resolve_parameters"]
