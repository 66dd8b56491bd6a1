import enum


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value):
        return cls((value > 0) - (value < 0))

    def __mul__(self, other):
        return Sign(int(self) * int(other))

    def __neg__(self):
        return Sign(-int(self))
