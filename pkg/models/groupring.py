"""
El anillo de grupo Q(zeta_{p^n})[N_n] con su estructura de Hopf,
la acción diagonal de Delta_n y el cálculo exacto del anillo fijo.

Un GroupRingElt guarda por separado el nivel del campo de coeficientes y el
nivel del grupo: nu conserva los coeficientes en Q(zeta_j) mientras el grupo
baja a N_i.
"""
import logging
import random
from dataclasses import dataclass, field as campo_dc
from math import gcd
from typing import Dict, List, Tuple

from sympy import QQ

from models.cyclotomic import (
    CycloElt, FieldDescriptor, campo, delta_apply, unit_apply, embed, galois_matrix, reduce,
    zeta_power, elemento_aleatorio, add as cadd, mul as cmul, scale as cscale, neg as cneg,
)
from models.errores import NivelIncompatible, ParametroInvalido
from models.reporte import Reporte, inicio_cronometro
from utils.linalg import nucleo, nucleo_disperso

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupRingElt:
    field: FieldDescriptor
    grupo: int
    coeffs: Tuple[CycloElt, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.p ** self.grupo:
            raise ParametroInvalido(
                f"Se esperaban {self.field.p ** self.grupo} coeficientes, hay {len(self.coeffs)}")

    @property
    def orden(self) -> int:
        """p^grupo, orden de N"""
        return self.field.p ** self.grupo

    @staticmethod
    def cero(f: FieldDescriptor, grupo: int = None) -> 'GroupRingElt':
        grupo = f.n if grupo is None else grupo
        return GroupRingElt(f, grupo, (CycloElt.cero(f),) * f.p ** grupo)

    @staticmethod
    def uno(f: FieldDescriptor, grupo: int = None) -> 'GroupRingElt':
        return sigma_power(f, 0, grupo)

    def __add__(self, otro: 'GroupRingElt') -> 'GroupRingElt':
        return gr_add(self, otro)

    def __mul__(self, otro: 'GroupRingElt') -> 'GroupRingElt':
        return gr_mul(self, otro)

    def __neg__(self) -> 'GroupRingElt':
        return GroupRingElt(self.field, self.grupo, tuple(cneg(c) for c in self.coeffs))

    def __sub__(self, otro: 'GroupRingElt') -> 'GroupRingElt':
        return gr_add(self, -otro)

    def vector(self) -> List:
        """Coordenadas sobre Q en la base {zeta^a sigma^b}, índice b*phi + a"""
        return [c for coef in self.coeffs for c in coef.coeffs]

    def to_json(self) -> List[List[str]]:
        return [c.to_json() for c in self.coeffs]


def _compatibles(a: GroupRingElt, b: GroupRingElt) -> None:
    if a.field != b.field or a.grupo != b.grupo:
        raise NivelIncompatible(
            f"Anillos de grupo distintos: ({a.field.n}, {a.grupo}) y ({b.field.n}, {b.grupo})")


def sigma_power(f: FieldDescriptor, b: int, grupo: int = None) -> GroupRingElt:
    """El elemento de grupo sigma^b"""
    grupo = f.n if grupo is None else grupo
    orden = f.p ** grupo
    cero, uno = CycloElt.cero(f), CycloElt.uno(f)
    return GroupRingElt(f, grupo, tuple(uno if k == b % orden else cero for k in range(orden)))


def gr_add(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    _compatibles(a, b)
    return GroupRingElt(a.field, a.grupo, tuple(cadd(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def gr_scale(r, x: GroupRingElt) -> GroupRingElt:
    """Multiplica por un escalar racional o por un CycloElt"""
    if isinstance(r, CycloElt):
        return GroupRingElt(x.field, x.grupo, tuple(cmul(r, c) for c in x.coeffs))
    return GroupRingElt(x.field, x.grupo, tuple(cscale(r, c) for c in x.coeffs))


def gr_mul(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    """Convolución: coeficiente de sigma^c es sum_{a+b = c} x_a y_b"""
    _compatibles(a, b)
    orden = a.orden
    resultado = [CycloElt.cero(a.field)] * orden
    for i, x in enumerate(a.coeffs):
        if x.es_cero:
            continue
        for j, y in enumerate(b.coeffs):
            if not y.es_cero:
                k = (i + j) % orden
                resultado[k] = cadd(resultado[k], cmul(x, y))
    return GroupRingElt(a.field, a.grupo, tuple(resultado))


@dataclass
class TensorElt:
    """Suma formal sobre pares (o tuplas) de elementos de grupo sigma^a ⊗ sigma^b ⊗ ..."""
    field: FieldDescriptor
    grupo: int
    terminos: Dict[Tuple[int, ...], CycloElt] = campo_dc(default_factory=dict)

    def agregar(self, clave: Tuple[int, ...], c: CycloElt) -> None:
        previo = self.terminos.get(clave)
        nuevo = c if previo is None else cadd(previo, c)
        if nuevo.es_cero:
            self.terminos.pop(clave, None)
        else:
            self.terminos[clave] = nuevo

    def __eq__(self, otro) -> bool:
        return (isinstance(otro, TensorElt) and self.field == otro.field
                and self.grupo == otro.grupo and self.terminos == otro.terminos)


def gr_comul(x: GroupRingElt) -> TensorElt:
    """Delta(sigma^b) = sigma^b ⊗ sigma^b extendido linealmente"""
    t = TensorElt(x.field, x.grupo)
    for b, c in enumerate(x.coeffs):
        if not c.es_cero:
            t.agregar((b, b), c)
    return t


def gr_counit(x: GroupRingElt) -> CycloElt:
    """epsilon(sigma^b) = 1"""
    total = CycloElt.cero(x.field)
    for c in x.coeffs:
        total = cadd(total, c)
    return total


def gr_antipode(x: GroupRingElt) -> GroupRingElt:
    """S(sigma^b) = sigma^{-b}"""
    orden = x.orden
    return GroupRingElt(x.field, x.grupo, tuple(x.coeffs[(-b) % orden] for b in range(orden)))


def comul_en_posicion(t: TensorElt, posicion: int) -> TensorElt:
    """Aplica Delta en el factor indicado de un tensor de elementos de grupo"""
    r = TensorElt(t.field, t.grupo)
    for clave, c in t.terminos.items():
        nueva = clave[:posicion] + (clave[posicion], clave[posicion]) + clave[posicion + 1:]
        r.agregar(nueva, c)
    return r


def counit_en_posicion(t: TensorElt, posicion: int) -> TensorElt:
    r = TensorElt(t.field, t.grupo)
    for clave, c in t.terminos.items():
        r.agregar(clave[:posicion] + clave[posicion + 1:], c)
    return r


def tensor_de_grado_uno(t: TensorElt) -> GroupRingElt:
    """Identifica un tensor de un solo factor con un elemento del anillo de grupo"""
    x = GroupRingElt.cero(t.field, t.grupo)
    coeffs = list(x.coeffs)
    for (b,), c in t.terminos.items():
        coeffs[b] = cadd(coeffs[b], c)
    return GroupRingElt(t.field, t.grupo, tuple(coeffs))


def multiplicar_con_antipoda(t: TensorElt) -> GroupRingElt:
    """m(S ⊗ id) sobre un tensor de dos factores"""
    orden = t.field.p ** t.grupo
    coeffs = [CycloElt.cero(t.field)] * orden
    for (a, b), c in t.terminos.items():
        k = (b - a) % orden
        coeffs[k] = cadd(coeffs[k], c)
    return GroupRingElt(t.field, t.grupo, tuple(coeffs))


def diag_action_unit(u: int, x: GroupRingElt) -> GroupRingElt:
    """Acción diagonal de la unidad u: zeta -> zeta^u en coeficientes y b -> b u en exponentes"""
    f = x.field
    if gcd(u, f.p) != 1:
        raise ParametroInvalido(f"{u} no es unidad módulo {f.p}")
    orden = x.orden
    u_grupo = u % orden
    coeffs = [CycloElt.cero(f)] * orden
    for b, c in enumerate(x.coeffs):
        if not c.es_cero:
            coeffs[(b * u_grupo) % orden] = unit_apply(u % f.orden, c)
    return GroupRingElt(f, x.grupo, tuple(coeffs))


def diag_action(e: int, x: GroupRingElt) -> GroupRingElt:
    """delta^e simultáneo en coeficientes y exponentes de sigma"""
    return diag_action_unit(x.field.unidad(e), x)


def character(k: int, x: GroupRingElt) -> CycloElt:
    """Evalúa el carácter chi_k(sigma^j) = zeta_grupo^{k j} con zeta_grupo = zeta^{p^{campo - grupo}}"""
    f = x.field
    if f.n < x.grupo:
        raise NivelIncompatible("Los coeficientes deben contener las raíces p^grupo-ésimas")
    salto = f.p ** (f.n - x.grupo)
    raw = [QQ(0)] * f.orden
    for j, c in enumerate(x.coeffs):
        desplazamiento = k * j * salto
        for a, v in enumerate(c.coeffs):
            if v != 0:
                raw[(a + desplazamiento) % f.orden] += v
    return reduce(f.p, f.n, raw)


def embed_coefficients(x: GroupRingElt, n: int) -> GroupRingElt:
    """Lleva los coeficientes a Q(zeta_n) sin tocar el grupo"""
    destino = campo(x.field.p, n)
    return GroupRingElt(destino, x.grupo, tuple(embed(x.field.n, n, c) for c in x.coeffs))


def _orbitas_exponentes(p: int, n: int, pi: int) -> List[List[int]]:
    """Órbitas de b -> b*pi en Z/p^n, cada una ordenada como b0, b0 pi, b0 pi^2, ..."""
    orden = p ** n
    vistos = set()
    orbitas = []
    for b0 in range(orden):
        if b0 in vistos:
            continue
        orbita = []
        b = b0
        while b not in vistos:
            vistos.add(b)
            orbita.append(b)
            b = (b * pi) % orden
        orbitas.append(orbita)
    return orbitas


def fixed_ring(p: int, n: int) -> List[GroupRingElt]:
    """Base sobre Q de (Q(zeta_n)[N_n])^{Delta_n}.

    El núcleo de delta - id se calcula por bloques: para cada órbita de
    b -> b pi de tamaño o, el coeficiente c del representante recorre el
    núcleo de delta^o - id en Q(zeta_n) y determina el resto de la órbita
    por c_{b0 pi^t} = delta^t(c). El espacio total es la suma directa de
    los bloques, así que el resultado es una base del núcleo completo.
    """
    f = campo(p, n)
    base = []
    cero = CycloElt.cero(f)
    for orbita in _orbitas_exponentes(p, n, f.pi):
        o = len(orbita)
        m = galois_matrix(f, o)
        filas = [[m[r][c] - (1 if r == c else 0) for c in range(f.phi)] for r in range(f.phi)]
        for v in nucleo(filas, f.phi):
            c0 = CycloElt(f, tuple(v))
            coeffs = [cero] * f.orden
            for t, b in enumerate(orbita):
                coeffs[b] = delta_apply(t, c0)
            base.append(GroupRingElt(f, n, tuple(coeffs)))
    logger.debug("anillo fijo p=%d n=%d: dimensión %d", p, n, len(base))
    return base


def fixed_ring_dense(p: int, n: int) -> List[GroupRingElt]:
    """Núcleo de delta - id sobre todo el espacio de dimensión phi p^n (comprobación cruzada)"""
    f = campo(p, n)
    dim = f.phi * f.orden
    columnas_zeta = [delta_apply(1, zeta_power(f, a)).coeffs for a in range(f.phi)]
    entradas: Dict[int, Dict[int, object]] = {}
    for b in range(f.orden):
        destino = (b * f.pi) % f.orden
        for a in range(f.phi):
            col = b * f.phi + a
            for r, v in enumerate(columnas_zeta[a]):
                if v != 0:
                    fila = entradas.setdefault(destino * f.phi + r, {})
                    fila[col] = fila.get(col, 0) + v
            fila = entradas.setdefault(col, {})
            fila[col] = fila.get(col, 0) - 1
    base = []
    for v in nucleo_disperso(entradas, (dim, dim)):
        coeffs = tuple(CycloElt(f, tuple(v[b * f.phi:(b + 1) * f.phi])) for b in range(f.orden))
        base.append(GroupRingElt(f, n, coeffs))
    logger.debug("anillo fijo (denso) p=%d n=%d: dimensión %d de %d", p, n, len(base), dim)
    return base


def es_fijo(x: GroupRingElt, e: int = 1) -> bool:
    return diag_action(e, x) == x


def _comul_producto(x: GroupRingElt, y: GroupRingElt) -> TensorElt:
    """Delta(x) Delta(y) en el producto tensorial de álgebras"""
    t = TensorElt(x.field, x.grupo)
    orden = x.orden
    for (a, _), c in gr_comul(x).terminos.items():
        for (b, _), d in gr_comul(y).terminos.items():
            k = (a + b) % orden
            t.agregar((k, k), cmul(c, d))
    return t


def hopf_axioms_check(p: int, n: int, semilla: int = 0, muestras: int = 4) -> Reporte:
    """Coasociatividad, counidad, antípoda y multiplicatividad de Delta en Q(zeta_n)[N_n]"""
    inicio = inicio_cronometro()
    f = campo(p, n)
    rng = random.Random(semilla)
    testigo = None
    for k in range(muestras):
        x = GroupRingElt(f, n, tuple(elemento_aleatorio(f, rng, 3) for _ in range(f.orden)))
        y = GroupRingElt(f, n, tuple(elemento_aleatorio(f, rng, 3) for _ in range(f.orden)))
        d = gr_comul(x)
        if comul_en_posicion(d, 0) != comul_en_posicion(d, 1):
            testigo = {'muestra': k, 'ley': 'coasociatividad'}
        elif tensor_de_grado_uno(counit_en_posicion(d, 0)) != x \
                or tensor_de_grado_uno(counit_en_posicion(d, 1)) != x:
            testigo = {'muestra': k, 'ley': 'counidad'}
        elif multiplicar_con_antipoda(d) != gr_scale(gr_counit(x), GroupRingElt.uno(f)):
            testigo = {'muestra': k, 'ley': 'antipoda'}
        elif gr_comul(gr_mul(x, y)) != _comul_producto(x, y):
            testigo = {'muestra': k, 'ley': 'Delta multiplicativa'}
        if testigo:
            testigo['x'] = x.to_json()
            break
    return Reporte.crear('groupring.hopf_axioms', {'p': p, 'n': n}, inicio, testigo, muestras=muestras)
