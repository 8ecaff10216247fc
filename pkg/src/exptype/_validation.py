"""Input validation helpers shared by the public functions and estimators."""

import math
import numbers

import numpy as np


class RangeError(ArithmeticError):
    """Raised when an exponential leaves the double-precision exponent range."""


#: largest real exponent that ``exp`` can take without overflowing
MAX_EXPONENT = math.log(np.finfo(float).max)


def as_complex(value, name="value"):
    """Coerce ``value`` (complex, real, or ``[re, im]`` pair) to a finite complex."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"{name} must be a [re, im] pair, got {value!r}")
        value = complex(float(value[0]), float(value[1]))
    elif isinstance(value, numbers.Number):
        value = complex(value)
    else:
        raise TypeError(f"{name} must be a number or [re, im] pair, got {type(value).__name__}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def as_complex_array(z, name="z"):
    arr = np.asarray(z)
    if arr.dtype.kind not in "biufc":
        raise TypeError(f"{name} must be numeric")
    arr = arr.astype(complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_positive(value, name, strict=True):
    if not isinstance(value, numbers.Real) or not math.isfinite(value):
        raise ValueError(f"{name} must be a finite real number, got {value!r}")
    if strict and value <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    if not strict and value < 0:
        raise ValueError(f"{name} must be non-negative, got {value!r}")
    return float(value)


def check_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def pair(z):
    """JSON form ``[re, im]`` of a complex number."""
    z = complex(z)
    return [z.real, z.imag]
