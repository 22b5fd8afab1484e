"""Single-slot reservoir sampling."""

from typing import Any, Optional

import numpy as np


class Reservoir:
    """Keeps one uniform sample of the items offered so far.

    The c-th offered item replaces the held one with probability 1/c, so after
    any number of offers each of them is held with equal probability. State is
    the count and the held item.
    """

    __slots__ = ("count", "item")

    words = 3  # count + a two-word edge

    def __init__(self):
        self.count = 0
        self.item: Optional[Any] = None

    def offer(self, item: Any, rng: np.random.Generator) -> None:
        self.count += 1
        if self.count == 1 or rng.random() * self.count < 1.0:
            self.item = item

    def __bool__(self) -> bool:
        return self.count > 0
