"""Process-wide singleton base used by the settings layer."""

from typing import Any, ClassVar, Dict, Type, TypeVar

T = TypeVar('T')


class Singleton:
    """
    Base class that keeps exactly one instance per subclass.

    Parameters may be supplied only on the first construction; passing
    parameters again raises ``TypeError`` so configuration cannot drift in
    the middle of a run. ``reset()`` drops the instance (tests, ``--config``).

    Example:
        ```python
        settings = Settings(grid_angles=4096)   # first call configures
        Settings.get_instance().grid_angles     # 4096
        Settings(grid_angles=512)               # TypeError
        ```
    """

    _instances: ClassVar[Dict[type, 'Singleton']] = {}

    def __new__(cls: Type[T], *args: Any, **kwargs: Any) -> T:
        if cls not in cls._instances:
            cls._instances[cls] = super().__new__(cls)
        return cls._instances[cls]

    def __init__(self, *args: Any, **kwargs: Any):
        if getattr(self, '_configured', False):
            if args or kwargs:
                raise TypeError(
                    f"{type(self).__name__} is already configured; call "
                    f"{type(self).__name__}.reset() before configuring it again."
                )
            return
        self._configured = True

    @classmethod
    def get_instance(cls: Type[T]) -> T:
        """Return the live instance, creating a default one if needed."""
        if cls not in cls._instances:
            return cls()
        return cls._instances[cls]

    @classmethod
    def reset(cls) -> None:
        cls._instances.pop(cls, None)
