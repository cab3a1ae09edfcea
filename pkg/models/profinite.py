"""
Sistemas inversos truncados: las proyecciones nu, sucesiones coherentes que
representan H_inf, truncaciones de N_inf y Delta_inf como sucesiones de
exponentes compatibles y el teorema del anillo fijo nivel a nivel.

Ningún objeto infinito se materializa: cada afirmación sobre H_inf, N_inf o
Delta_inf se expresa como una afirmación por nivel más la compatibilidad con nu.
"""
import logging
import random
from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

from sympy import QQ

from models.cyclotomic import CycloElt, campo, zeta_power, add as cadd
from models.errores import CapExcedido, IncoherenciaError, NivelIncompatible, ParametroInvalido
from models.groupring import (
    GroupRingElt, diag_action, diag_action_unit, embed_coefficients, fixed_ring, gr_add,
    gr_scale, sigma_power,
)
from models.hopfgalois import HElt, coordenadas_h, e_basis, e_basis_independent
from models.reporte import Reporte, inicio_cronometro
from utils.helpers import validar_nivel, validar_primo_impar
from utils.linalg import rango

logger = logging.getLogger(__name__)


def nu_groupring(j: int, i: int, x: GroupRingElt) -> GroupRingElt:
    """nu_{j,i}: sigma_j -> sigma_i; identidad en coeficientes, exponentes módulo p^i"""
    if x.grupo != j:
        raise NivelIncompatible(f"El elemento está en el nivel de grupo {x.grupo}, no en {j}")
    if j < i:
        raise ParametroInvalido(f"nu_{{{j},{i}}} requiere j >= i")
    validar_nivel(i)
    if j == i:
        return x
    orden_i = x.field.p ** i
    coeffs = [CycloElt.cero(x.field)] * orden_i
    for b, c in enumerate(x.coeffs):
        if not c.es_cero:
            coeffs[b % orden_i] = cadd(coeffs[b % orden_i], c)
    return GroupRingElt(x.field, i, tuple(coeffs))


def nu_h(n: int, h: HElt) -> HElt:
    """e_{n,i} -> e_{n-1,i/p} si p | i, 0 en otro caso"""
    if n < 2:
        raise ParametroInvalido("nu_h requiere n >= 2")
    if h.field.n != n:
        raise NivelIncompatible(f"HElt de nivel {h.field.n}, no {n}")
    p = h.field.p
    orden_menor = p ** (n - 1)
    return HElt(campo(p, n - 1), tuple(h.coords[p * t] for t in range(orden_menor)))


def nu_h_por_anillo_de_grupo(n: int, h: HElt) -> HElt:
    """El mismo nu calculado sobre el desarrollo en el anillo de grupo"""
    imagen = nu_groupring(n, n - 1, h.to_groupring())
    return HElt.from_groupring(imagen)


@dataclass(frozen=True)
class CoherentH:
    p: int
    L: int
    levels: Tuple[HElt, ...]

    def to_json(self) -> dict:
        return {'p': self.p, 'L': self.L, 'levels': [h.to_json() for h in self.levels]}


def make_coherent(levels: Sequence[HElt]) -> CoherentH:
    """Valida nu(levels[n]) = levels[n-1]; el error indica el primer n que falla"""
    if not levels:
        raise ParametroInvalido("Se necesita al menos un nivel")
    p = levels[0].field.p
    for k, h in enumerate(levels, start=1):
        if h.field.p != p or h.field.n != k:
            raise NivelIncompatible(f"La posición {k} contiene un HElt de nivel {h.field.n}")
    for n in range(2, len(levels) + 1):
        if nu_h(n, levels[n - 1]) != levels[n - 2]:
            raise IncoherenciaError(f"nu_{{{n},{n - 1}}} no es compatible en el nivel {n}", nivel=n)
    return CoherentH(p, len(levels), tuple(levels))


def project(c: CoherentH, n: int) -> HElt:
    """Proyección canónica psi_n"""
    if not 1 <= n <= c.L:
        raise ParametroInvalido(f"Nivel {n} fuera de 1..{c.L}")
    return c.levels[n - 1]


def coherent_generator(p: int, L: int, i1: int) -> CoherentH:
    """Sucesión e_{n,i_n} con i_n = p i_{n-1} partiendo de e_{1,i1}"""
    levels = []
    i = i1
    for n in range(1, L + 1):
        levels.append(HElt.base(p, n, i))
        i *= p
    return make_coherent(levels)


@dataclass(frozen=True)
class PadicTrunc:
    p: int
    L: int
    exponents: Tuple[int, ...]
    unit: bool = False

    def __post_init__(self):
        if len(self.exponents) != self.L:
            raise ParametroInvalido(f"Se esperaban {self.L} residuos")
        for n, a in enumerate(self.exponents, start=1):
            if not 0 <= a < self.p ** n:
                raise ParametroInvalido(f"a_{n} = {a} no es un residuo módulo {self.p ** n}")
            if n > 1 and a % self.p ** (n - 1) != self.exponents[n - 2]:
                raise IncoherenciaError(f"a_{n} no es compatible con a_{n - 1}", nivel=n)
            if self.unit and gcd(a, self.p) != 1:
                raise ParametroInvalido(f"a_{n} = {a} no es unidad")

    @staticmethod
    def from_integer(p: int, L: int, k: int, unit: bool = False) -> 'PadicTrunc':
        return PadicTrunc(p, L, tuple(k % p ** n for n in range(1, L + 1)), unit)

    @staticmethod
    def from_delta_exponent(p: int, L: int, e: int) -> 'PadicTrunc':
        """La unidad de delta^e: u_n = pi^e mod p^n"""
        pi = campo(p, 1).pi
        return PadicTrunc(p, L, tuple(pow(pi, e, p ** n) for n in range(1, L + 1)), True)

    def to_json(self) -> dict:
        return {'p': self.p, 'L': self.L, 'exponents': list(self.exponents), 'unit': self.unit}


def padic_ops(x: PadicTrunc, y: PadicTrunc, op: str) -> PadicTrunc:
    """Suma o producto nivel a nivel"""
    if (x.p, x.L) != (y.p, y.L):
        raise NivelIncompatible("Truncaciones p-ádicas de parámetros distintos")
    modulos = [x.p ** n for n in range(1, x.L + 1)]
    if op == 'add':
        valores = tuple((a + b) % m for a, b, m in zip(x.exponents, y.exponents, modulos))
        return PadicTrunc(x.p, x.L, valores, False)
    if op == 'mul':
        valores = tuple((a * b) % m for a, b, m in zip(x.exponents, y.exponents, modulos))
        return PadicTrunc(x.p, x.L, valores, x.unit and y.unit)
    raise ParametroInvalido(f"Operación desconocida: {op}")


def aut_action(d: PadicTrunc, x: PadicTrunc) -> PadicTrunc:
    """Delta_inf actúa sobre N_inf multiplicando exponentes nivel a nivel"""
    if not d.unit:
        raise ParametroInvalido("Solo las unidades actúan como automorfismos")
    return padic_ops(d, x, 'mul')


def delta_inf_action(d: PadicTrunc, c: CoherentH) -> CoherentH:
    """delta^{e_n} en cada nivel vía la acción diagonal del anillo de grupo"""
    if not d.unit:
        raise ParametroInvalido("delta_inf_action requiere una unidad")
    if (d.p, d.L) != (c.p, c.L):
        raise NivelIncompatible("Parámetros distintos entre la unidad y la sucesión")
    niveles = []
    for n, h in enumerate(c.levels, start=1):
        imagen = diag_action_unit(d.exponents[n - 1], h.to_groupring())
        niveles.append(HElt.from_groupring(imagen))
    return make_coherent(niveles)


def sucesion_desde_tope(x: GroupRingElt) -> List[GroupRingElt]:
    """Sucesión coherente nu_{L,n}(x) para n = 1..L, con coeficientes en Q(zeta_L)"""
    return [nu_groupring(x.grupo, n, x) for n in range(1, x.grupo + 1)]


def delta_inf_fixes(d: PadicTrunc, sucesion: Sequence[GroupRingElt]) -> bool:
    """True si la unidad d fija cada nivel de la sucesión de anillos de grupo"""
    return all(diag_action_unit(d.exponents[-1], x) == x for x in sucesion)


def niveles_en_span_e(sucesion: Sequence[GroupRingElt]) -> bool:
    return all(coordenadas_h(x) is not None for x in sucesion)


def elemento_aleatorio(p: int, L: int, rng: random.Random, fijo: bool) -> GroupRingElt:
    """Elemento de Q(zeta_L)[N_L]: en H_L si fijo, con un término zeta sigma^1 añadido si no"""
    f = campo(p, L)
    x = GroupRingElt.cero(f)
    for i in range(f.orden):
        c = QQ(rng.randint(-3, 3))
        if c != 0:
            x = gr_add(x, gr_scale(c, e_basis(p, L, i)))
    if not fijo:
        x = gr_add(x, gr_scale(zeta_power(f, 1), sigma_power(f, 1)))
    return x


def functoriality_check(p: int, L: int) -> Reporte:
    """nu_{j,i} nu_{k,j} = nu_{k,i} sobre la base sigma^b, 1 <= i <= j <= k <= L"""
    inicio = inicio_cronometro()
    testigo = None
    for k in range(1, L + 1):
        f = campo(p, k)
        for b in range(f.orden):
            x = sigma_power(f, b)
            for j in range(1, k + 1):
                for i in range(1, j + 1):
                    if nu_groupring(j, i, nu_groupring(k, j, x)) != nu_groupring(k, i, x):
                        testigo = {'k': k, 'j': j, 'i': i, 'b': b}
                        break
                if testigo:
                    break
            if testigo:
                break
        if testigo:
            break
    return Reporte.crear('profinite.functoriality', {'p': p, 'L': L}, inicio, testigo)


def nu_h_check(p: int, L: int, semilla: int = 0, muestras: int = 5) -> Reporte:
    """La regla sobre la base e coincide con nu del anillo de grupo (base y combinaciones)"""
    inicio = inicio_cronometro()
    rng = random.Random(semilla)
    testigo = None
    for n in range(2, L + 1):
        orden = p ** n
        candidatos = [HElt.base(p, n, i) for i in range(orden)]
        candidatos += [HElt.desde_lista(p, n, [rng.randint(-4, 4) for _ in range(orden)])
                       for _ in range(muestras)]
        for h in candidatos:
            regla = nu_h(n, h)
            por_anillo = nu_groupring(n, n - 1, h.to_groupring())
            if embed_coefficients(regla.to_groupring(), n) != por_anillo:
                testigo = {'n': n, 'h': h.to_json()}
                break
        if testigo:
            break
    return Reporte.crear('profinite.nu_h', {'p': p, 'L': L, 'seed': semilla}, inicio, testigo)


def nu_surjectivity_check(p: int, L: int) -> Reporte:
    """Cada e_{n-1,i} tiene preimagen e_{n,p i}"""
    inicio = inicio_cronometro()
    testigo = None
    for n in range(2, L + 1):
        for i in range(p ** (n - 1)):
            if nu_h(n, HElt.base(p, n, p * i)) != HElt.base(p, n - 1, i):
                testigo = {'n': n, 'i': i}
                break
        if testigo:
            break
    return Reporte.crear('profinite.surjectivity', {'p': p, 'L': L}, inicio, testigo)


def commute_check(p: int, jn: int, in_: int) -> Reporte:
    """delta nu = nu delta sobre la base zeta^a sigma^b del nivel jn"""
    inicio = inicio_cronometro()
    if jn < in_:
        raise ParametroInvalido(f"Se requiere jn >= in_, se recibió {jn} < {in_}")
    f = campo(p, jn)
    testigo = None
    for b in range(f.orden):
        for a in range(f.phi):
            x = gr_scale(zeta_power(f, a), sigma_power(f, b))
            if diag_action(1, nu_groupring(jn, in_, x)) != nu_groupring(jn, in_, diag_action(1, x)):
                testigo = {'a': a, 'b': b}
                break
        if testigo:
            break
    return Reporte.crear('profinite.commute', {'p': p, 'j': jn, 'i': in_}, inicio, testigo,
                         elementos=f.phi * f.orden)


def coherence_check(p: int, L: int, semilla: int = 0, muestras: int = 4) -> Reporte:
    """Generadores e_{n,i_n} coherentes, rechazo de perturbaciones y acción de Delta_inf"""
    inicio = inicio_cronometro()
    rng = random.Random(semilla)
    testigo = None
    for i1 in range(p):
        c = coherent_generator(p, L, i1)
        phi = campo(p, L).phi
        for e in sorted({0, 1, 2 % phi, phi - 1}):
            if delta_inf_action(PadicTrunc.from_delta_exponent(p, L, e), c) != c:
                testigo = {'i1': i1, 'delta_exponente': e}
                break
        if testigo:
            break
    if testigo is None:
        unos = [HElt.uno(p, n) for n in range(1, L + 1)]
        perturbado = [HElt(unos[0].field, (QQ(2),) + unos[0].coords[1:])] + unos[1:]
        try:
            make_coherent(perturbado)
            testigo = {'perturbacion_aceptada': True}
        except IncoherenciaError as exc:
            if L >= 2 and exc.nivel != 2:
                testigo = {'nivel_reportado': exc.nivel}
    if testigo is None:
        d = PadicTrunc.from_delta_exponent(p, L, 1)
        for k in range(muestras):
            fijo = k % 2 == 0
            sucesion = sucesion_desde_tope(elemento_aleatorio(p, L, rng, fijo))
            if delta_inf_fixes(d, sucesion) != niveles_en_span_e(sucesion):
                testigo = {'muestra': k, 'fijo': fijo}
                break
    return Reporte.crear('profinite.coherence', {'p': p, 'L': L, 'seed': semilla}, inicio, testigo)


def fixed_truncation_check(p: int, L: int, limite_dim: int = 20000) -> Reporte:
    """En cada nivel el espacio fijo es span{e_{n,i}}, y nu lo lleva sobre el del nivel n-1"""
    inicio = inicio_cronometro()
    validar_primo_impar(p)
    validar_nivel(L, 2)
    f_tope = campo(p, L)
    if f_tope.phi * f_tope.orden > limite_dim:
        raise CapExcedido(
            f"p^L phi(p^L) = {f_tope.phi * f_tope.orden} supera el límite {limite_dim}", limite_dim)
    testigo = None
    dimensiones = {}
    for n in range(1, L + 1):
        fijos = fixed_ring(p, n)
        dimensiones[n] = len(fijos)
        if len(fijos) != p ** n:
            testigo = {'n': n, 'dimension': len(fijos)}
            break
        if not all(diag_action(1, e_basis(p, n, i)) == e_basis(p, n, i) for i in range(p ** n)):
            testigo = {'n': n, 'e_no_invariante': True}
            break
        if not e_basis_independent(p, n):
            testigo = {'n': n, 'independencia': False}
            break
        if n == 1:
            continue
        # nu del espacio fijo de nivel n sobre el del nivel n-1
        imagenes = []
        for x in fijos:
            coords = coordenadas_h(nu_groupring(n, n - 1, x))
            if coords is None:
                testigo = {'n': n, 'imagen_fuera_de_H': True}
                break
            imagenes.append(coords)
        if testigo:
            break
        r = rango(imagenes, p ** (n - 1))
        if r != p ** (n - 1):
            testigo = {'n': n, 'rango_imagen': r}
            break
    return Reporte.crear('profinite.fixed_truncation', {'p': p, 'L': L}, inicio, testigo,
                         dimensiones={str(k): v for k, v in dimensiones.items()})


def profinite_suite(p: int, L: int, semilla: int = 0, limite_dim: int = 20000) -> List[Reporte]:
    """Todas las verificaciones del sistema inverso para (p, L)"""
    reportes = [
        functoriality_check(p, L),
        nu_h_check(p, L, semilla),
        nu_surjectivity_check(p, L),
    ]
    for j in range(1, L + 1):
        for i in range(1, j + 1):
            if j - i <= 1:
                reportes.append(commute_check(p, j, i))
    reportes.append(coherence_check(p, L, semilla))
    reportes.append(fixed_truncation_check(p, L, limite_dim))
    return reportes
