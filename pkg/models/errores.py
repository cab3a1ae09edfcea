"""
Jerarquía de excepciones del sistema de verificación
"""
from typing import Optional


class HopfError(Exception):
    """Error base de todas las operaciones del paquete"""


class ParametroInvalido(HopfError, ValueError):
    """Parámetros fuera de dominio: primo par, nivel < 1, índice fuera de rango, radicando inválido"""


class NivelIncompatible(HopfError, ValueError):
    """Operandos construidos sobre niveles o campos distintos"""


class DivisionPorCero(HopfError, ZeroDivisionError):
    """Inverso del cero o radicando nulo"""


class SubgrupoInvalido(HopfError, ValueError):
    """Delta no es subgrupo de Gamma"""


class IncoherenciaError(HopfError):
    """Sucesión de niveles que no es compatible bajo nu"""

    def __init__(self, mensaje: str, nivel: Optional[int] = None):
        super().__init__(mensaje)
        self.nivel = nivel


class CapExcedido(HopfError):
    """El índice [Gamma:Delta] supera el tope configurado"""

    def __init__(self, mensaje: str, cap: int):
        super().__init__(mensaje)
        self.cap = cap
