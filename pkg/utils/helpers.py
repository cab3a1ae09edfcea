"""
Funciones auxiliares: racionales exactos, validación de parámetros y tiempos
"""
import time
from typing import List

from sympy import QQ, integer_nthroot, isprime

from models.errores import ParametroInvalido, DivisionPorCero

Rat = type(QQ(0))


def rat(valor) -> Rat:
    """Convierte enteros, racionales o cadenas 'num/den' al tipo racional exacto"""
    if isinstance(valor, str):
        return parse_rat(valor)
    if isinstance(valor, Rat):
        return valor
    if isinstance(valor, int):
        return QQ(valor)
    try:
        return QQ(valor.numerator, valor.denominator)
    except AttributeError:
        raise ParametroInvalido(f"No se puede convertir {valor!r} a racional exacto")


def format_rat(valor) -> str:
    """Formatea un racional como 'num/den' (el cero es '0/1')"""
    valor = rat(valor)
    return f"{valor.numerator}/{valor.denominator}"


def parse_rat(texto: str) -> Rat:
    """Parsea 'num/den' o un entero; nunca acepta flotantes"""
    if texto is None:
        raise ParametroInvalido("Racional vacío")
    texto = texto.strip()
    partes = texto.split('/')
    try:
        if len(partes) == 1:
            return QQ(int(partes[0]))
        if len(partes) == 2:
            den = int(partes[1])
            if den == 0:
                raise DivisionPorCero(f"Denominador nulo en '{texto}'")
            return QQ(int(partes[0]), den)
    except ValueError:
        pass
    raise ParametroInvalido(f"Racional mal formado: '{texto}' (se espera 'num/den')")


def parse_lista_rat(texto: str) -> List[Rat]:
    """Parsea una lista separada por comas de racionales"""
    if not texto.strip():
        return []
    return [parse_rat(t) for t in texto.split(',')]


def validar_primo_impar(p: int) -> int:
    """Valida que p sea un primo impar"""
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise ParametroInvalido(f"p debe ser un primo impar, se recibió {p!r}")
    return p


def validar_nivel(n: int, minimo: int = 1) -> int:
    """Valida que el nivel sea un entero >= minimo"""
    if not isinstance(n, int) or n < minimo:
        raise ParametroInvalido(f"El nivel debe ser un entero >= {minimo}, se recibió {n!r}")
    return n


def validar_indice(i: int, tope: int, nombre: str = 'i') -> int:
    """Valida 0 <= i < tope"""
    if not isinstance(i, int) or not 0 <= i < tope:
        raise ParametroInvalido(f"{nombre} = {i!r} fuera de rango 0..{tope - 1}")
    return i


def es_potencia_p(a, p: int) -> bool:
    """True si el racional a es una potencia p-ésima de un racional (p impar)"""
    a = rat(a)
    _, num_exacta = integer_nthroot(abs(int(a.numerator)), p)
    _, den_exacta = integer_nthroot(int(a.denominator), p)
    return num_exacta and den_exacta


def validar_radicando(a, p: int) -> Rat:
    """El radicando debe ser no nulo y no ser potencia p-ésima de un racional"""
    a = rat(a)
    if a == 0:
        raise DivisionPorCero("El radicando no puede ser 0")
    if es_potencia_p(a, p):
        raise ParametroInvalido(f"{format_rat(a)} es una potencia {p}-ésima en Q")
    return a


def milisegundos_desde(inicio: float) -> int:
    """Milisegundos transcurridos desde un instante de time.perf_counter()"""
    return int((time.perf_counter() - inicio) * 1000)
