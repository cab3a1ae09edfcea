"""
Aritmética exacta en la torre ciclotómica Q(zeta_{p^n})

Los elementos se guardan en la base de potencias {zeta^i : 0 <= i < phi(p^n)},
reducidos módulo Phi_{p^n}(x) = sum_{k<p} x^{k p^{n-1}}.
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Sequence, Tuple

from sympy import QQ
from sympy.ntheory import n_order

from models.errores import ParametroInvalido, NivelIncompatible, DivisionPorCero
from models.reporte import Reporte, inicio_cronometro
from utils.helpers import Rat, rat, format_rat, parse_rat, validar_primo_impar, validar_nivel

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Menor raíz primitiva módulo p^2; sirve para todos los niveles p^n"""
    validar_primo_impar(p)
    modulo = p * p
    orden = p * (p - 1)
    for g in range(2, modulo):
        if gcd(g, p) == 1 and n_order(g, modulo) == orden:
            return g
    raise ParametroInvalido(f"Sin raíz primitiva módulo {modulo}")


@dataclass(frozen=True)
class FieldDescriptor:
    p: int
    n: int
    phi: int
    pi: int

    @property
    def orden(self) -> int:
        """p^n, orden de zeta"""
        return self.p ** self.n

    @property
    def paso(self) -> int:
        """p^{n-1}"""
        return self.p ** (self.n - 1)

    def unidad(self, e: int) -> int:
        """pi^e mod p^n (e puede ser negativo)"""
        return pow(self.pi, e % self.phi, self.orden)


@lru_cache(maxsize=None)
def campo(p: int, n: int) -> FieldDescriptor:
    """Descriptor (cacheado) de Q(zeta_{p^n})"""
    validar_primo_impar(p)
    validar_nivel(n)
    return FieldDescriptor(p=p, n=n, phi=(p - 1) * p ** (n - 1), pi=primitive_root(p))


@dataclass(frozen=True)
class CycloElt:
    field: FieldDescriptor
    coeffs: Tuple[Rat, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.phi:
            raise ParametroInvalido(
                f"Se esperaban {self.field.phi} coeficientes, se recibieron {len(self.coeffs)}")

    @staticmethod
    def cero(f: FieldDescriptor) -> 'CycloElt':
        return CycloElt(f, (QQ(0),) * f.phi)

    @staticmethod
    def uno(f: FieldDescriptor) -> 'CycloElt':
        return CycloElt.racional(f, 1)

    @staticmethod
    def racional(f: FieldDescriptor, r) -> 'CycloElt':
        return CycloElt(f, (rat(r),) + (QQ(0),) * (f.phi - 1))

    @property
    def es_cero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __add__(self, otro: 'CycloElt') -> 'CycloElt':
        return add(self, otro)

    def __sub__(self, otro: 'CycloElt') -> 'CycloElt':
        return sub(self, otro)

    def __neg__(self) -> 'CycloElt':
        return neg(self)

    def __mul__(self, otro: 'CycloElt') -> 'CycloElt':
        return mul(self, otro)

    def to_json(self) -> List[str]:
        return [format_rat(c) for c in self.coeffs]

    @staticmethod
    def from_json(f: FieldDescriptor, datos: Sequence[str]) -> 'CycloElt':
        return CycloElt(f, tuple(parse_rat(s) for s in datos))


def _mismo_campo(a: CycloElt, b: CycloElt) -> None:
    if a.field != b.field:
        raise NivelIncompatible(
            f"Campos distintos: Q(zeta_{a.field.p}^{a.field.n}) y Q(zeta_{b.field.p}^{b.field.n})")


def reduce(p: int, n: int, raw: Sequence) -> CycloElt:
    """Forma canónica de sum raw[e] zeta^e; los exponentes se toman módulo p^n"""
    f = campo(p, n)
    orden, phi, paso = f.orden, f.phi, f.paso
    v = [QQ(0)] * orden
    for e, c in enumerate(raw):
        if c != 0:
            v[e % orden] += rat(c)
    # zeta^phi = -sum_{k=0}^{p-2} zeta^{k p^{n-1}}
    for e in range(orden - 1, phi - 1, -1):
        c = v[e]
        if c == 0:
            continue
        v[e] = QQ(0)
        base = e - phi
        for k in range(p - 1):
            v[base + k * paso] -= c
    return CycloElt(f, tuple(v[:phi]))


def zeta_power(f: FieldDescriptor, k: int) -> CycloElt:
    """zeta^k en forma canónica"""
    raw = [0] * f.orden
    raw[k % f.orden] = 1
    return reduce(f.p, f.n, raw)


def add(a: CycloElt, b: CycloElt) -> CycloElt:
    _mismo_campo(a, b)
    return CycloElt(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: CycloElt, b: CycloElt) -> CycloElt:
    _mismo_campo(a, b)
    return CycloElt(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: CycloElt) -> CycloElt:
    return CycloElt(a.field, tuple(-x for x in a.coeffs))


def scale(r, a: CycloElt) -> CycloElt:
    r = rat(r)
    return CycloElt(a.field, tuple(r * x for x in a.coeffs))


def mul(a: CycloElt, b: CycloElt) -> CycloElt:
    """Producto por convolución seguido de reducción"""
    _mismo_campo(a, b)
    f = a.field
    raw = [QQ(0)] * (2 * f.phi - 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            if y != 0:
                raw[i + j] += x * y
    return reduce(f.p, f.n, raw)


def delta_apply(e: int, x: CycloElt) -> CycloElt:
    """Automorfismo de Galois delta^e: zeta -> zeta^{pi^e}"""
    f = x.field
    u = f.unidad(e)
    if u == 1:
        return x
    raw = [QQ(0)] * f.orden
    for i, c in enumerate(x.coeffs):
        if c != 0:
            raw[(i * u) % f.orden] += c
    return reduce(f.p, f.n, raw)


def unit_apply(u: int, x: CycloElt) -> CycloElt:
    """zeta -> zeta^u para una unidad u módulo p^n"""
    f = x.field
    if gcd(u, f.p) != 1:
        raise ParametroInvalido(f"{u} no es unidad módulo {f.orden}")
    raw = [QQ(0)] * f.orden
    for i, c in enumerate(x.coeffs):
        if c != 0:
            raw[(i * u) % f.orden] += c
    return reduce(f.p, f.n, raw)


def norm(x: CycloElt) -> Rat:
    """Norma a Q: producto de todos los conjugados de Galois"""
    f = x.field
    producto = x
    for e in range(1, f.phi):
        producto = mul(producto, delta_apply(e, x))
    if not producto.is_rational:
        raise ArithmeticError("La norma no resultó racional")
    return producto.coeffs[0]


def trace(x: CycloElt) -> Rat:
    """Traza a Q: suma de los conjugados de Galois"""
    f = x.field
    total = x
    for e in range(1, f.phi):
        total = add(total, delta_apply(e, x))
    return total.coeffs[0]


def inverse(a: CycloElt) -> CycloElt:
    """Inverso como producto de los demás conjugados dividido por la norma"""
    if a.es_cero:
        raise DivisionPorCero("El cero no tiene inverso")
    f = a.field
    otros = CycloElt.uno(f)
    for e in range(1, f.phi):
        otros = mul(otros, delta_apply(e, a))
    n = mul(a, otros)
    return scale(1 / n.coeffs[0], otros)


def embed(m: int, n: int, x: CycloElt) -> CycloElt:
    """Inclusión Q(zeta_m) -> Q(zeta_n) dada por zeta_m -> zeta_n^{p^{n-m}}"""
    f = x.field
    if f.n != m:
        raise NivelIncompatible(f"El elemento vive en el nivel {f.n}, no en {m}")
    if m > n:
        raise ParametroInvalido(f"No hay inclusión del nivel {m} en el nivel {n}")
    if m == n:
        return x
    salto = f.p ** (n - m)
    destino = campo(f.p, n)
    raw = [QQ(0)] * destino.orden
    for i, c in enumerate(x.coeffs):
        raw[i * salto] = c
    return reduce(f.p, n, raw)


def galois_orbit(x: CycloElt) -> List[CycloElt]:
    return [delta_apply(e, x) for e in range(x.field.phi)]


def galois_matrix(f: FieldDescriptor, e: int) -> List[List[Rat]]:
    """Matriz de delta^e en la base de potencias (columna i = imagen de zeta^i)"""
    columnas = [delta_apply(e, zeta_power(f, i)).coeffs for i in range(f.phi)]
    return [[columnas[i][r] for i in range(f.phi)] for r in range(f.phi)]


def elemento_aleatorio(f: FieldDescriptor, rng, alcance: int = 5) -> CycloElt:
    return CycloElt(f, tuple(QQ(rng.randint(-alcance, alcance), rng.randint(1, 3)) for _ in range(f.phi)))


def axioms_check(p: int, n: int, semilla: int = 0, muestras: int = 6) -> Reporte:
    """Axiomas de campo y multiplicatividad de delta^e sobre elementos aleatorios"""
    inicio = inicio_cronometro()
    f = campo(p, n)
    rng = random.Random(semilla)
    testigo = None
    for _ in range(muestras):
        x, y, z = (elemento_aleatorio(f, rng) for _ in range(3))
        e = rng.randrange(f.phi)
        if mul(x, add(y, z)) != add(mul(x, y), mul(x, z)):
            testigo = {'ley': 'distributiva', 'x': x.to_json(), 'y': y.to_json(), 'z': z.to_json()}
        elif mul(mul(x, y), z) != mul(x, mul(y, z)):
            testigo = {'ley': 'asociativa', 'x': x.to_json(), 'y': y.to_json(), 'z': z.to_json()}
        elif not x.es_cero and mul(x, inverse(x)) != CycloElt.uno(f):
            testigo = {'ley': 'inverso', 'x': x.to_json()}
        elif delta_apply(e, mul(x, y)) != mul(delta_apply(e, x), delta_apply(e, y)):
            testigo = {'ley': 'automorfismo', 'e': e, 'x': x.to_json(), 'y': y.to_json()}
        if testigo:
            break
    if testigo is None and delta_apply(f.phi, zeta_power(f, 1)) != zeta_power(f, 1):
        testigo = {'ley': 'orden de delta', 'phi': f.phi}
    return Reporte.crear('cyclotomic.axiomas', {'p': p, 'n': n}, inicio, testigo, muestras=muestras)
