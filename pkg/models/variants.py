"""
Estructuras sobre la base Q(zeta_1): el grupo Gamma_{n,1} = <sigma_n, beta_n>
actuando sobre Q(zeta_n, w_n), sus p complementos normales N_{n,i}, los campos
fijos E_{n,i}, las álgebras de Hopf H_{n,i} y su sistema inverso.

Un GammaElt (s, e) es el automorfismo zeta -> zeta^{pi^e}, w -> zeta^s w.
sigma = (1, 0), delta = (0, 1) y beta = delta^{p-1}.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.combinatorics import Permutation, PermutationGroup

from models.cyclotomic import (
    CycloElt, campo, delta_apply, embed, zeta_power, add as cadd, mul as cmul, scale as cscale,
)
from models.errores import IncoherenciaError, NivelIncompatible, ParametroInvalido
from models.hopfgalois import e_basis
from models.reporte import Reporte, inicio_cronometro
from utils.helpers import Rat, format_rat, rat, validar_nivel, validar_primo_impar
from utils.linalg import nucleo, rango

logger = logging.getLogger(__name__)

# Dimensión de Q(zeta_1, w_n) sobre Q hasta la que se arma el criterio del producto smash
DIM_ACCION_MAXIMA = 18


@dataclass(frozen=True)
class GammaElt:
    p: int
    n: int
    s: int
    e: int

    def __post_init__(self):
        f = campo(self.p, self.n)
        object.__setattr__(self, 's', self.s % f.orden)
        object.__setattr__(self, 'e', self.e % f.phi)

    @staticmethod
    def identidad(p: int, n: int) -> 'GammaElt':
        return GammaElt(p, n, 0, 0)

    @staticmethod
    def sigma(p: int, n: int) -> 'GammaElt':
        return GammaElt(p, n, 1, 0)

    @staticmethod
    def delta(p: int, n: int) -> 'GammaElt':
        return GammaElt(p, n, 0, 1)

    @staticmethod
    def beta(p: int, n: int) -> 'GammaElt':
        return GammaElt(p, n, 0, p - 1)

    @staticmethod
    def desde_beta(p: int, n: int, s: int, b: int) -> 'GammaElt':
        """sigma^s beta^b"""
        return GammaElt(p, n, s, (p - 1) * b)

    @property
    def b(self) -> Optional[int]:
        """Exponente de beta módulo p^{n-1}, o None si el elemento no está en Gamma_{n,1}"""
        if self.e % (self.p - 1):
            return None
        return self.e // (self.p - 1)

    @property
    def unidad(self) -> int:
        return campo(self.p, self.n).unidad(self.e)

    def __mul__(self, otro: 'GammaElt') -> 'GammaElt':
        """Composición self ∘ otro"""
        if (self.p, self.n) != (otro.p, otro.n):
            raise NivelIncompatible("GammaElt de niveles distintos")
        return GammaElt(self.p, self.n, self.s + otro.s * self.unidad, self.e + otro.e)

    def inversa(self) -> 'GammaElt':
        f = campo(self.p, self.n)
        return GammaElt(self.p, self.n, -self.s * f.unidad(-self.e), -self.e)

    def potencia(self, k: int) -> 'GammaElt':
        if k < 0:
            return self.inversa().potencia(-k)
        resultado = GammaElt.identidad(self.p, self.n)
        base = self
        while k:
            if k & 1:
                resultado = resultado * base
            base = base * base
            k >>= 1
        return resultado

    def orden(self) -> int:
        k, x = 1, self
        identidad = GammaElt.identidad(self.p, self.n)
        while x != identidad:
            x = x * self
            k += 1
        return k

    def imagen_monomio(self, a: int, b: int) -> Tuple[int, int]:
        """zeta^a w^b -> zeta^{a pi^e + s b} w^b"""
        orden = self.p ** self.n
        return (a * self.unidad + self.s * b) % orden, b

    def permutacion(self) -> Permutation:
        """Permutación de los monomios zeta^a w^b (punto b p^n + a)"""
        return Permutation(self.imagenes())

    def imagenes(self) -> List[int]:
        orden = self.p ** self.n
        imagen = [0] * (orden * orden)
        for b in range(orden):
            for a in range(orden):
                a2, b2 = self.imagen_monomio(a, b)
                imagen[b * orden + a] = b2 * orden + a2
        return imagen

    def restringir(self) -> 'GammaElt':
        """Restricción a Q(zeta_{n-1}, w_{n-1}) con zeta_{n-1} = zeta_n^p, w_{n-1} = w_n^p"""
        if self.n < 2:
            raise ParametroInvalido("No hay nivel inferior a 1")
        return GammaElt(self.p, self.n - 1, self.s, self.e)

    def to_json(self) -> dict:
        return {'p': self.p, 'n': self.n, 's': self.s, 'e': self.e, 'b': self.b}


@dataclass(frozen=True)
class BigFieldElt:
    p: int
    n: int
    radicand: Rat
    columnas: Tuple[CycloElt, ...]

    def __post_init__(self):
        if len(self.columnas) != self.p ** self.n:
            raise ParametroInvalido(f"Se esperaban {self.p ** self.n} columnas")

    @property
    def coeffs(self) -> List[List[Rat]]:
        """Matriz (a, b) de coeficientes sobre {zeta^a w^b}"""
        f = campo(self.p, self.n)
        return [[self.columnas[b].coeffs[a] for b in range(f.orden)] for a in range(f.phi)]

    @staticmethod
    def cero(p: int, n: int, a) -> 'BigFieldElt':
        f = campo(p, n)
        return BigFieldElt(p, n, rat(a), (CycloElt.cero(f),) * f.orden)

    @staticmethod
    def monomio(p: int, n: int, a, exp_zeta: int, exp_w: int, c=1) -> 'BigFieldElt':
        """c zeta^exp_zeta w^exp_w con 0 <= exp_w < p^n"""
        f = campo(p, n)
        columnas = [CycloElt.cero(f)] * f.orden
        columnas[exp_w] = cscale(c, zeta_power(f, exp_zeta))
        return BigFieldElt(p, n, rat(a), tuple(columnas))

    @staticmethod
    def desde_ciclotomico(x: CycloElt, a, b: int = 0) -> 'BigFieldElt':
        f = x.field
        columnas = [CycloElt.cero(f)] * f.orden
        columnas[b] = x
        return BigFieldElt(f.p, f.n, rat(a), tuple(columnas))

    @staticmethod
    def desde_vector(p: int, n: int, a, v: Sequence) -> 'BigFieldElt':
        f = campo(p, n)
        return BigFieldElt(p, n, rat(a), tuple(
            CycloElt(f, tuple(v[b * f.phi:(b + 1) * f.phi])) for b in range(f.orden)))

    def vector(self) -> List[Rat]:
        return [c for col in self.columnas for c in col.coeffs]

    @property
    def es_cero(self) -> bool:
        return all(c.es_cero for c in self.columnas)

    def _compatible(self, otro: 'BigFieldElt') -> None:
        if (self.p, self.n, self.radicand) != (otro.p, otro.n, otro.radicand):
            raise NivelIncompatible("Elementos de campos distintos")

    def __add__(self, otro: 'BigFieldElt') -> 'BigFieldElt':
        self._compatible(otro)
        return BigFieldElt(self.p, self.n, self.radicand,
                           tuple(cadd(x, y) for x, y in zip(self.columnas, otro.columnas)))

    def __sub__(self, otro: 'BigFieldElt') -> 'BigFieldElt':
        return self + otro.escalar(-1)

    def escalar(self, r) -> 'BigFieldElt':
        return BigFieldElt(self.p, self.n, self.radicand, tuple(cscale(r, c) for c in self.columnas))

    def __mul__(self, otro: 'BigFieldElt') -> 'BigFieldElt':
        """Producto con w^{p^n} = a (disjunción lineal de Q(zeta_n) y Q(w_n))"""
        self._compatible(otro)
        f = campo(self.p, self.n)
        columnas = [CycloElt.cero(f)] * f.orden
        for b, x in enumerate(self.columnas):
            if x.es_cero:
                continue
            for c, y in enumerate(otro.columnas):
                if y.es_cero:
                    continue
                producto = cmul(x, y)
                k = b + c
                if k >= f.orden:
                    k -= f.orden
                    producto = cscale(self.radicand, producto)
                columnas[k] = cadd(columnas[k], producto)
        return BigFieldElt(self.p, self.n, self.radicand, tuple(columnas))

    def to_json(self) -> dict:
        return {'p': self.p, 'n': self.n, 'radicand': format_rat(self.radicand),
                'coeffs': [[format_rat(c) for c in fila] for fila in self.coeffs]}


def include(x: BigFieldElt, n: int) -> BigFieldElt:
    """Inclusión Q(zeta_{n-1}, w_{n-1}) -> Q(zeta_n, w_n): zeta_{n-1} = zeta_n^p, w_{n-1} = w_n^p"""
    if n != x.n + 1:
        raise NivelIncompatible(f"Solo se incluye del nivel {n - 1} al {n}")
    f = campo(x.p, n)
    columnas = [CycloElt.cero(f)] * f.orden
    for b, c in enumerate(x.columnas):
        columnas[x.p * b] = embed(x.n, n, c)
    return BigFieldElt(x.p, n, x.radicand, tuple(columnas))


def gamma_act(g: GammaElt, x: BigFieldElt) -> BigFieldElt:
    """Columna b: x_b -> zeta^{s b} delta^e(x_b)"""
    if (g.p, g.n) != (x.p, x.n):
        raise NivelIncompatible("GammaElt y BigFieldElt de niveles distintos")
    f = campo(x.p, x.n)
    columnas = []
    for b, c in enumerate(x.columnas):
        if c.es_cero:
            columnas.append(c)
            continue
        columnas.append(cmul(zeta_power(f, g.s * b), delta_apply(g.e, c)))
    return BigFieldElt(x.p, x.n, x.radicand, tuple(columnas))


def _columna_matriz(g: GammaElt, b: int) -> List[List[Rat]]:
    """Matriz de x -> zeta^{s b} delta^e(x) en Q(zeta_n) (columna a = imagen de zeta^a)"""
    f = campo(g.p, g.n)
    imagenes = [zeta_power(f, a * g.unidad + g.s * b).coeffs for a in range(f.phi)]
    return [[imagenes[a][r] for a in range(f.phi)] for r in range(f.phi)]


def fixed_field(p: int, n: int, gens: Sequence[GammaElt], a=2) -> List[BigFieldElt]:
    """Base sobre Q del subcampo de Q(zeta_n, w_n) fijo por los generadores.

    La acción respeta la descomposición en columnas w^b, así que el núcleo
    se calcula columna por columna.
    """
    f = campo(p, n)
    base = []
    for b in range(f.orden):
        filas = []
        for g in gens:
            m = _columna_matriz(g, b)
            filas.extend([[m[r][c] - (1 if r == c else 0) for c in range(f.phi)] for r in range(f.phi)])
        for v in nucleo(filas, f.phi):
            base.append(BigFieldElt.desde_ciclotomico(CycloElt(f, tuple(v)), a, b))
    logger.debug("campo fijo p=%d n=%d con %d generadores: dimensión %d", p, n, len(gens), len(base))
    return base


def complement_generator(p: int, n: int, i: int) -> GammaElt:
    """sigma para i = 0, sigma^i beta^{p^{n-2}} para i unidad módulo p"""
    validar_primo_impar(p)
    if n < 2:
        raise ParametroInvalido("beta^{p^{n-2}} requiere n >= 2")
    if i == 0:
        return GammaElt.sigma(p, n)
    if not 1 <= i < p:
        raise ParametroInvalido(f"i debe estar en 0..{p - 1}, se recibió {i}")
    return GammaElt.desde_beta(p, n, i, p ** (n - 2))


def _grupo(gens: Sequence[GammaElt]) -> PermutationGroup:
    return PermutationGroup([g.permutacion() for g in gens])


def normal_complements(p: int, n: int) -> List[GammaElt]:
    """Los p generadores de complementos normales de <beta_n> en Gamma_{n,1}, verificados"""
    generadores = [complement_generator(p, n, i) for i in range(p)]
    ok, detalle = _verificar_complementos(p, n, generadores)
    if not ok:
        raise IncoherenciaError(f"Complemento normal inválido: {detalle}")
    return generadores


def _verificar_complementos(p: int, n: int, generadores: Sequence[GammaElt]) -> Tuple[bool, dict]:
    orden = p ** n
    sigma, beta = GammaElt.sigma(p, n), GammaElt.beta(p, n)
    G = _grupo([sigma, beta])
    B = _grupo([beta])
    pb = beta.permutacion()
    elementos_b = set(B.generate())
    identidad = Permutation(list(range(orden * orden)))
    conjuntos = []
    for i, g in enumerate(generadores):
        N = _grupo([g])
        if N.order() != orden:
            return False, {'i': i, 'orden': N.order()}
        if not N.is_cyclic:
            return False, {'i': i, 'ciclico': False}
        if not G.contains(g.permutacion()):
            return False, {'i': i, 'en_gamma': False}
        elementos = set(N.generate())
        if elementos & elementos_b != {identidad}:
            return False, {'i': i, 'interseccion_trivial': False}
        if N.order() * B.order() != G.order():
            return False, {'i': i, 'producto': N.order() * B.order()}
        pg = g.permutacion()
        # beta g beta^{-1} y beta^{-1} g beta
        if not (N.contains(pg ^ pb) and N.contains(pg ^ (~pb))):
            return False, {'i': i, 'normalizado_por_beta': False}
        if not N.is_normal(G):
            return False, {'i': i, 'normal': False}
        conjuntos.append(frozenset(elementos))
    if len(set(conjuntos)) != len(conjuntos):
        return False, {'distintos': False}
    return True, {'orden_gamma': G.order()}


def normal_complements_check(p: int, n: int) -> Reporte:
    inicio = inicio_cronometro()
    generadores = [complement_generator(p, n, i) for i in range(p)]
    ok, detalle = _verificar_complementos(p, n, generadores)
    return Reporte.crear('variants.normal_complements', {'p': p, 'n': n}, inicio,
                         None if ok else detalle, cantidad=len(generadores),
                         generadores=[g.to_json() for g in generadores], **({} if not ok else detalle))


def fixed_field_check(p: int, n: int) -> Reporte:
    """[E_{n,i} : Q] = phi(p^n) para cada i; E_{n,0} = Q(zeta_n)"""
    inicio = inicio_cronometro()
    f = campo(p, n)
    testigo = None
    dimensiones = {}
    for i in range(p):
        base = fixed_field(p, n, [complement_generator(p, n, i)])
        dimensiones[str(i)] = len(base)
        if len(base) != f.phi:
            testigo = {'i': i, 'dimension': len(base), 'esperada': f.phi}
            break
        if i == 0 and any(not x.columnas[b].es_cero for x in base for b in range(1, f.orden)):
            testigo = {'i': 0, 'E_no_es_Q_zeta_n': True}
            break
    return Reporte.crear('variants.fixed_field', {'p': p, 'n': n}, inicio, testigo,
                         dimensiones=dimensiones)


@dataclass(frozen=True)
class VariantElt:
    """sum_t c_t gamma^t en E_{n,i}[N_{n,i}], con c_t en Q(zeta_n, w_n)"""
    p: int
    n: int
    i: int
    coeffs: Tuple[BigFieldElt, ...]

    def vector(self) -> List[Rat]:
        return [c for x in self.coeffs for c in x.vector()]


@lru_cache(maxsize=None)
def _potencias(p: int, n: int, i: int) -> Tuple[GammaElt, ...]:
    g = complement_generator(p, n, i)
    return tuple(g.potencia(t) for t in range(p ** n))


def _indice_potencia(p: int, n: int, i: int, x: GammaElt) -> int:
    for t, y in enumerate(_potencias(p, n, i)):
        if y == x:
            return t
    raise ParametroInvalido(f"{x.to_json()} no pertenece a N_{{{n},{i}}}")


def variant_apply(h: VariantElt, x: BigFieldElt) -> BigFieldElt:
    """h(x) = sum_t c_t gamma^t(x)"""
    total = BigFieldElt.cero(x.p, x.n, x.radicand)
    for t, c in enumerate(h.coeffs):
        if not c.es_cero:
            total = total + c * gamma_act(_potencias(h.p, h.n, h.i)[t], x)
    return total


def variant_counit(h: VariantElt) -> BigFieldElt:
    total = BigFieldElt.cero(h.p, h.n, h.coeffs[0].radicand)
    for c in h.coeffs:
        total = total + c
    return total


def h_variant(p: int, n: int, i: int, a=2) -> List[VariantElt]:
    """Base sobre Q de H_{n,i} = (E_{n,i}[N_{n,i}])^{<beta_n>}.

    beta actúa en los coeficientes por gamma_act y sobre N_{n,i} por conjugación
    beta gamma beta^{-1} = gamma^k. Por cada órbita de t -> t k de tamaño o, el
    coeficiente del representante recorre el campo fijo de <gamma, beta^o>.
    """
    validar_nivel(n, 2)
    gamma = complement_generator(p, n, i)
    beta = GammaElt.beta(p, n)
    orden = p ** n
    k = _indice_potencia(p, n, i, beta * gamma * beta.inversa())
    vistos = set()
    base = []
    for t0 in range(orden):
        if t0 in vistos:
            continue
        orbita = []
        t = t0
        while t not in vistos:
            vistos.add(t)
            orbita.append(t)
            t = (t * k) % orden
        o = len(orbita)
        for c in fixed_field(p, n, [gamma, beta.potencia(o)], a):
            coeffs = [BigFieldElt.cero(p, n, a)] * orden
            for r, t in enumerate(orbita):
                coeffs[t] = gamma_act(beta.potencia(r), c)
            base.append(VariantElt(p, n, i, tuple(coeffs)))
    logger.debug("H_{%d,%d} (p=%d): dimensión %d", n, i, p, len(base))
    return base


def h_variant_check(p: int, n: int, a=2) -> Reporte:
    """dim_Q H_{n,i} = (p-1) p^n, es decir rango p^n sobre Q(zeta_1), para cada i"""
    inicio = inicio_cronometro()
    testigo = None
    dimensiones = {}
    for i in range(p):
        base = h_variant(p, n, i, a)
        dim_q = len(base)
        dimensiones[str(i)] = {'Q': dim_q, 'Q(zeta_1)': dim_q // (p - 1)}
        if dim_q != (p - 1) * p ** n:
            testigo = {'i': i, 'dimension_Q': dim_q}
            break
    if testigo is None:
        testigo = _contraste_h_n(p, n, a)
    return Reporte.crear('variants.h_variant', {'p': p, 'n': n, 'a': format_rat(rat(a))}, inicio,
                         testigo, dimensiones=dimensiones)


def _e_como_variante(p: int, n: int, k: int, a, t: int = 0) -> VariantElt:
    """zeta_1^t e_{n,k} dentro de Q(zeta_n, w_n)[<sigma>]"""
    f = campo(p, n)
    e = e_basis(p, n, k)
    z1 = zeta_power(f, t * f.paso)
    return VariantElt(p, n, 0, tuple(BigFieldElt.desde_ciclotomico(cmul(z1, c), a) for c in e.coeffs))


def _contraste_h_n(p: int, n: int, a) -> Optional[dict]:
    """H_{n,0} = Q(zeta_1) span{e_{n,k}}; e_{n,k} proyecta sobre w^k como en H_n"""
    base = [h.vector() for h in h_variant(p, n, 0, a)]
    e_escalados = [_e_como_variante(p, n, k, a, t).vector() for k in range(p ** n) for t in range(p - 1)]
    dim = len(base[0])
    r_base, r_e, r_union = rango(base, dim), rango(e_escalados, dim), rango(base + e_escalados, dim)
    if not r_base == r_e == r_union:
        return {'rango_H_n0': r_base, 'rango_e': r_e, 'rango_union': r_union}
    for k in range(p ** n):
        e = _e_como_variante(p, n, k, a)
        for j in range(p ** n):
            w_j = BigFieldElt.monomio(p, n, a, 0, j)
            esperado = w_j if j == k else BigFieldElt.cero(p, n, a)
            if variant_apply(e, w_j) != esperado:
                return {'k': k, 'j': j, 'accion': 'no es proyeccion'}
    return None


def _base_k_prima(p: int, n: int, a) -> List[BigFieldElt]:
    """Base zeta_1^t w^b de Q(zeta_1, w_n) sobre Q"""
    f = campo(p, n)
    return [BigFieldElt.monomio(p, n, a, t * f.paso, b) for b in range(f.orden) for t in range(p - 1)]


def _coords_k_prima(x: BigFieldElt) -> Optional[List[Rat]]:
    """Coordenadas en la base zeta_1^t w^b, o None si x no está en Q(zeta_1, w_n)"""
    f = campo(x.p, x.n)
    permitidos = {t * f.paso for t in range(x.p - 1)}
    coords = []
    for col in x.columnas:
        for a, c in enumerate(col.coeffs):
            if c != 0 and a not in permitidos:
                return None
        coords.extend(col.coeffs[t * f.paso] for t in range(x.p - 1))
    return coords


def _operador(h: VariantElt, base: Sequence[BigFieldElt], izquierda: Optional[BigFieldElt] = None):
    """Matriz (aplanada por filas) de x -> izquierda · h(x) sobre Q(zeta_1, w_n)"""
    columnas = []
    for x in base:
        y = variant_apply(h, x)
        if izquierda is not None:
            y = izquierda * y
        coords = _coords_k_prima(y)
        if coords is None:
            return None
        columnas.append(coords)
    dim = len(base)
    return [columnas[c][r] for r in range(dim) for c in range(dim)]


def variant_action_check(p: int, n: int, i: int, a=2) -> Reporte:
    """Criterio Hopf-Galois sobre Q(zeta_1): K'#H_{n,i} -> End_{Q(zeta_1)}(K') es biyectivo
    y el campo fijo de la acción es Q(zeta_1)"""
    inicio = inicio_cronometro()
    a = rat(a)
    parametros = {'p': p, 'n': n, 'i': i, 'a': format_rat(a)}
    base_k = _base_k_prima(p, n, a)
    dim = len(base_k)
    if dim > DIM_ACCION_MAXIMA:
        return Reporte.omitido('variants.action', parametros,
                               f"dim_Q Q(zeta_1, w_n) = {dim} > {DIM_ACCION_MAXIMA}")
    base_h = h_variant(p, n, i, a)
    testigo = None
    # imágenes h(x) calculadas una vez; k·h(x) es un producto en el campo
    imagenes = [[variant_apply(h, x) for x in base_k] for h in base_h]
    operadores = []
    for hi, h in enumerate(base_h):
        for k in base_k:
            columnas = []
            for y in imagenes[hi]:
                coords = _coords_k_prima(k * y)
                if coords is None:
                    testigo = {'h': hi, 'imagen_fuera_de_K_prima': True}
                    break
                columnas.append(coords)
            if testigo:
                break
            operadores.append([columnas[c][r] for r in range(dim) for c in range(dim)])
        if testigo:
            break
    rango_smash = None
    dim_fijo = None
    if testigo is None:
        rango_smash = rango(operadores, dim * dim)
        esperado = (p - 1) * p ** (2 * n)
        if rango_smash != esperado:
            testigo = {'rango': rango_smash, 'esperado': esperado}
    if testigo is None:
        filas = []
        for hi, h in enumerate(base_h):
            eps = variant_counit(h)
            columnas = []
            for x, y in zip(base_k, imagenes[hi]):
                coords = _coords_k_prima(y - eps * x)
                if coords is None:
                    testigo = {'h': hi, 'counidad_fuera_de_K_prima': True}
                    break
                columnas.append(coords)
            if testigo:
                break
            filas.extend([[columnas[c][r] for c in range(dim)] for r in range(dim)])
        if testigo is None:
            dim_fijo = len(nucleo(filas, dim))
            if dim_fijo != p - 1:
                testigo = {'dimension_campo_fijo': dim_fijo, 'esperada': p - 1}
    return Reporte.crear('variants.action', parametros, inicio, testigo,
                         rango=rango_smash, dimension_campo_fijo=dim_fijo)


def variant_images_distinct(p: int, n: int, a=2) -> Reporte:
    """Los spans {x -> h(x) : h en H_{n,i}} dentro de End_Q(K') son distintos dos a dos"""
    inicio = inicio_cronometro()
    a = rat(a)
    parametros = {'p': p, 'n': n, 'a': format_rat(a)}
    base_k = _base_k_prima(p, n, a)
    dim = len(base_k)
    if dim > DIM_ACCION_MAXIMA:
        return Reporte.omitido('variants.images_distinct', parametros,
                               f"dim_Q Q(zeta_1, w_n) = {dim} > {DIM_ACCION_MAXIMA}")
    spans = {}
    testigo = None
    for i in range(p):
        ops = [_operador(h, base_k) for h in h_variant(p, n, i, a)]
        if any(op is None for op in ops):
            testigo = {'i': i, 'imagen_fuera_de_K_prima': True}
            break
        spans[i] = ops
    rangos = {}
    if testigo is None:
        for i in range(p):
            for j in range(i + 1, p):
                r_i = rango(spans[i], dim * dim)
                r_union = rango(spans[i] + spans[j], dim * dim)
                rangos[f"{i},{j}"] = [r_i, r_union]
                if r_union == r_i:
                    testigo = {'i': i, 'j': j, 'mismo_span': True}
                    break
            if testigo:
                break
    return Reporte.crear('variants.images_distinct', parametros, inicio, testigo, rangos=rangos)


def variant_nu(p: int, n: int, i: int, x: GammaElt) -> GammaElt:
    """gamma_n^t -> gamma_{n-1}^t con gamma_n = sigma_n^i beta_n^{p^{n-2}} (sigma_n si i = 0)"""
    if n < 3:
        raise ParametroInvalido("El sistema inverso de los N_{n,i} se define para n >= 3")
    if (x.p, x.n) != (p, n):
        raise NivelIncompatible("El elemento no está en el nivel indicado")
    t = _indice_potencia(p, n, i, x)
    return complement_generator(p, n - 1, i).potencia(t)


def variant_nu_ring(p: int, n: int, i: int, coefs: Dict[int, Rat]) -> Dict[int, Rat]:
    """nu sobre Q[N_{n,i}] con elementos dados como {t: coeficiente de gamma_n^t}"""
    if n < 3:
        raise ParametroInvalido("El sistema inverso de los N_{n,i} se define para n >= 3")
    orden_menor = p ** (n - 1)
    resultado: Dict[int, Rat] = {}
    for t, c in coefs.items():
        clave = t % orden_menor
        resultado[clave] = resultado.get(clave, QQ(0)) + rat(c)
    return {t: c for t, c in resultado.items() if c != 0}


def variant_nu_check(p: int, n: int) -> Reporte:
    """nu de generadores, homomorfismo sobreyectivo con núcleo de orden p; se anota si
    coincide con la restricción de automorfismos"""
    inicio = inicio_cronometro()
    testigo = None
    coincide_restriccion = {}
    for i in range(p):
        g_n = complement_generator(p, n, i)
        g_m = complement_generator(p, n - 1, i)
        if variant_nu(p, n, i, g_n) != g_m:
            testigo = {'i': i, 'generador': False}
            break
        potencias = _potencias(p, n, i)
        imagenes = [variant_nu(p, n, i, x) for x in potencias]
        for t1 in range(0, len(potencias), max(1, len(potencias) // 9)):
            for t2 in range(len(potencias)):
                if variant_nu(p, n, i, potencias[t1] * potencias[t2]) != imagenes[t1] * imagenes[t2]:
                    testigo = {'i': i, 'homomorfismo': [t1, t2]}
                    break
            if testigo:
                break
        if testigo:
            break
        distintas = {(y.s, y.e) for y in imagenes}
        nucleo_nu = [x for x, y in zip(potencias, imagenes) if y == GammaElt.identidad(p, n - 1)]
        if len(distintas) != p ** (n - 1) or len(nucleo_nu) != p:
            testigo = {'i': i, 'imagen': len(distintas), 'nucleo': len(nucleo_nu)}
            break
        coincide_restriccion[str(i)] = g_n.restringir() == g_m
    return Reporte.crear('variants.nu', {'p': p, 'n': n}, inicio, testigo,
                         coincide_con_restriccion=coincide_restriccion)


def contencion_esperada(i: int, j: int) -> bool:
    """E_{n-1,0} ⊆ E_{n,j} para todo j; E_{n-1,i} no está en E_{n,i} si i != 0.

    La restricción a nivel n-1 de sigma^j beta^{p^{n-2}} es sigma^j: beta_{n-1}
    tiene orden p^{n-2}. Por eso E_{n,j} contiene a E_{n-1,0} y a ningún otro.
    """
    return i == 0


def containment_check(p: int, n: int, i: int, j: int, a=2,
                      esperado: Optional[bool] = None) -> Tuple[bool, Reporte]:
    """¿E_{n-1,i} contenido en E_{n,j}? Se calcula y se compara con la tabla esperada"""
    inicio = inicio_cronometro()
    if i != 0 and n < 3:
        raise ParametroInvalido("E_{n-1,i} con i != 0 requiere n >= 3")
    if esperado is None:
        esperado = contencion_esperada(i, j)
    menor = fixed_field(p, n - 1, [complement_generator(p, n - 1, i)], a)
    g = complement_generator(p, n, j)
    contenido = all(gamma_act(g, include(x, n)) == include(x, n) for x in menor)
    testigo = None
    if contenido != esperado:
        fuera = next((x for x in menor if gamma_act(g, include(x, n)) != include(x, n)), None)
        testigo = {'contenido': contenido, 'esperado': esperado,
                   'elemento_no_fijo': fuera.to_json() if fuera is not None else None}
    reporte = Reporte.crear('variants.containment', {'p': p, 'n': n, 'i': i, 'j': j}, inicio,
                            testigo, contenido=contenido, esperado=esperado, dimension_menor=len(menor))
    return contenido, reporte


def galois_group(p: int, n: int, r: int) -> Tuple[List[GammaElt], List[GammaElt]]:
    """Generadores de Gamma = Gal(Q(zeta_n, w_n)/Q(zeta_r)) y de Delta = Gal(.../Q(zeta_r, w_n))"""
    validar_primo_impar(p)
    validar_nivel(n)
    if not 0 <= r <= n:
        raise ParametroInvalido(f"r debe estar en 0..{n}")
    paso = 1 if r == 0 else (p - 1) * p ** (r - 1)
    d = GammaElt(p, n, 0, paso)
    return [GammaElt.sigma(p, n), d], [d]


def variants_suite(p: int, n: int, a=2) -> List[Reporte]:
    reportes = [normal_complements_check(p, n), fixed_field_check(p, n), h_variant_check(p, n, a)]
    for i in range(p):
        reportes.append(variant_action_check(p, n, i, a))
    reportes.append(variant_images_distinct(p, n, a))
    if n >= 3:
        reportes.append(variant_nu_check(p, n))
        for i, j in [(0, 0), (1, 1), (0, 1)]:
            reportes.append(containment_check(p, n, i, j, a)[1])
    return reportes
