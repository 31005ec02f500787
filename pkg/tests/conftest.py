from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,  # shell-count DPs have cold-cache outliers
    max_examples=60,
    suppress_health_check=[HealthCheck.filter_too_much],
)
settings.load_profile("suite")
