import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "gentle",
    deadline=None,
    max_examples=int(os.environ.get("GENTLE_EXT_EXAMPLES", "25")),
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("gentle")
