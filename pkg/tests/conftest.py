from hypothesis import settings

settings.register_profile("arborkit", max_examples=40, deadline=None)
settings.load_profile("arborkit")
