"""Complex-number field type for configuration and data models.

YAML has no complex literal, so amplitudes travel as ``[re, im]`` pairs.
"""

from typing import Annotated, Any

import numpy as np
from pydantic import PlainSerializer, PlainValidator


def parse_complex(value: Any) -> complex:
    """Coerce a config value into a Python complex.

    Accepts complex and real numbers, strings such as ``"1+2j"`` and
    two-element ``[re, im]`` sequences.
    """
    if isinstance(value, (complex, np.complexfloating)):
        return complex(value)
    if isinstance(value, (int, float, np.integer, np.floating)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", ""))
        except ValueError as e:
            raise ValueError(f"not a complex number: {value!r}") from e
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"expected complex, number, string or [re, im] pair, got {value!r}")


def dump_complex(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


ComplexNumber = Annotated[
    complex,
    PlainValidator(parse_complex),
    PlainSerializer(dump_complex, return_type=list),
]
