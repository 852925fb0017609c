from hypothesis import settings

# corpus entries are built lazily and cached, so a first call can be slow
settings.register_profile("default", deadline=None)
settings.load_profile("default")
