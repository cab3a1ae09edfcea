"""
Enumeración de estructuras Hopf-Galois por el método de Greither-Pareigis.

Gamma y Delta son grupos concretos de permutaciones (PermutationGroup de
sympy). Gamma actúa por traslación a izquierda sobre las coclases
S = Gamma/Delta; las estructuras son los subgrupos regulares N de Perm(S)
normalizados por lambda(Gamma).

Los candidatos N se buscan por tipo de isomorfismo: para cada grupo T de
orden |S| del catálogo, N = f lambda_T(T) f^{-1} con f: T -> S biyección y
f^{-1} lambda(Gamma) f contenido en Hol(T). Esa búsqueda recorre cientos de
miles de elementos de Hol(T) y trabaja con tuplas; el resto usa sympy.

Las permutaciones se escriben como tuplas de imágenes y se componen como
funciones: compose(f, g) = f ∘ g. sympy multiplica al revés, p*q = q ∘ p.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import factorint
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AbelianGroup, AlternatingGroup, CyclicGroup, DihedralGroup
from sympy.utilities.iterables import partitions

from models.errores import CapExcedido, ParametroInvalido, SubgrupoInvalido
from models.reporte import Reporte, inicio_cronometro
from models.variants import galois_group

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def a_sympy(f: Perm) -> Permutation:
    return Permutation(list(f))


def a_tupla(x: Permutation) -> Perm:
    return tuple(x.array_form)


def compose(f: Perm, g: Perm) -> Perm:
    """(f ∘ g)(i) = f(g(i))"""
    return a_tupla(a_sympy(g) * a_sympy(f))


def inverse(f: Perm) -> Perm:
    return a_tupla(~a_sympy(f))


def identity(grado: int) -> Perm:
    return tuple(range(grado))


def cycle_type(f: Perm) -> Tuple[int, ...]:
    """Largos de los ciclos, puntos fijos incluidos, en orden creciente"""
    estructura = a_sympy(f).cycle_structure
    return tuple(sorted(largo for largo, veces in estructura.items() for _ in range(veces)))


def validar_perm(imagen: Sequence[int]) -> Perm:
    f = tuple(int(x) for x in imagen)
    if sorted(f) != list(range(len(f))):
        raise ParametroInvalido(f"{list(imagen)} no es una permutación de 0..{len(f) - 1}")
    return f


@dataclass
class FiniteGroup:
    """Grupo de permutaciones de 0..grado-1 dado por generadores"""
    grado: int
    generators: Tuple[Perm, ...]
    grupo: PermutationGroup = field(init=False, repr=False, compare=False)
    _elementos: Optional[Tuple[Perm, ...]] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.generators = tuple(validar_perm(g) for g in self.generators)
        if any(len(g) != self.grado for g in self.generators):
            raise ParametroInvalido("Generadores de grados distintos")
        gens = self.generators or (identity(self.grado),)
        self.grupo = PermutationGroup([a_sympy(g) for g in gens])

    @staticmethod
    def desde_elementos(grado: int, elementos) -> 'FiniteGroup':
        """Subgrupo ya cerrado; los elementos quedan como generadores"""
        elementos = tuple(sorted(set(elementos)))
        grupo = FiniteGroup(grado, elementos)
        grupo._elementos = elementos
        return grupo

    @property
    def elements(self) -> Tuple[Perm, ...]:
        if self._elementos is None:
            self._elementos = tuple(sorted(a_tupla(x) for x in self.grupo.generate()))
        return self._elementos

    @property
    def orden(self) -> int:
        return int(self.grupo.order())

    def __contains__(self, f: Perm) -> bool:
        return len(f) == self.grado and self.grupo.contains(a_sympy(f))

    def es_subgrupo_de(self, otro: 'FiniteGroup') -> bool:
        return self.grado == otro.grado and self.grupo.is_subgroup(otro.grupo)

    def to_json(self) -> List[List[int]]:
        return [list(x) for x in self.elements]


def coset_action(Gamma: FiniteGroup, Delta: FiniteGroup) -> Tuple[int, Callable[[Perm], Perm]]:
    """Acción de Gamma sobre las coclases x Delta; el punto 0 es Delta.

    coset_transversal da representantes t con Gamma = U H*t en el producto de
    sympy, es decir las coclases t ∘ Delta. g lleva t ∘ Delta a g ∘ t ∘ Delta,
    que en sympy es H*(t*g).
    """
    if not Delta.es_subgrupo_de(Gamma):
        raise SubgrupoInvalido("Delta no es subgrupo de Gamma")
    H = Delta.grupo
    representantes = sorted(Gamma.grupo.coset_transversal(H),
                            key=lambda t: (not H.contains(t), a_tupla(t)))
    tamano = len(representantes)
    if tamano * Delta.orden != Gamma.orden:
        raise SubgrupoInvalido("Las coclases no cubren Gamma")
    inversos = [~t for t in representantes]

    def clase(y: Permutation) -> int:
        return next(k for k, t_inv in enumerate(inversos) if H.contains(y * t_inv))

    def lam(g: Perm) -> Perm:
        gs = a_sympy(g)
        return tuple(clase(t * gs) for t in representantes)

    logger.debug("coset_action: |Gamma|=%d |Delta|=%d |S|=%d", Gamma.orden, Delta.orden, tamano)
    return tamano, lam


def lambda_group(Gamma: FiniteGroup, Delta: FiniteGroup) -> FiniteGroup:
    tamano, lam = coset_action(Gamma, Delta)
    return FiniteGroup(tamano, tuple(lam(g) for g in Gamma.generators))


def is_regular(N: FiniteGroup, tamano: int) -> bool:
    """Transitivo y de orden igual al número de puntos"""
    return N.grado == tamano and N.orden == tamano and N.grupo.is_transitive()


def normalizes(G: FiniteGroup, N: FiniteGroup) -> bool:
    # n^g = g^{-1} n g en sympy
    return all(N.grupo.contains(n ^ g) for g in G.grupo.generators for n in N.grupo.generators)


# Catálogo de grupos abstractos

@dataclass(frozen=True)
class GrupoAbstracto:
    """Grupo con elementos 0..m-1, identidad 0 y tabla de multiplicación"""
    nombre: str
    tabla: Tuple[Tuple[int, ...], ...]
    abeliano: bool

    @property
    def orden(self) -> int:
        return len(self.tabla)

    def traslacion(self, t: int) -> Perm:
        """lambda_T(t): x -> t x"""
        return self.tabla[t]

    def orden_de(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.tabla[y][x]
            k += 1
        return k

    @property
    def es_ciclico(self) -> bool:
        return any(self.orden_de(x) == self.orden for x in range(self.orden))


def _desde_producto(nombre: str, elementos: Sequence, mult: Callable, neutro) -> GrupoAbstracto:
    elementos = [neutro] + [x for x in elementos if x != neutro]
    indice = {x: k for k, x in enumerate(elementos)}
    tabla = tuple(tuple(indice[mult(x, y)] for y in elementos) for x in elementos)
    abeliano = all(tabla[i][j] == tabla[j][i] for i in range(len(tabla)) for j in range(i))
    return GrupoAbstracto(nombre, tabla, abeliano)


def _desde_permutaciones(nombre: str, G: PermutationGroup) -> GrupoAbstracto:
    # tabla de la composición funcional x ∘ y, que en sympy es y*x
    return _desde_producto(nombre, list(G.generate()), lambda x, y: y * x, G.identity)


def _abeliano(invariantes: Sequence[int]) -> GrupoAbstracto:
    nombre = ' x '.join(f"C{k}" for k in invariantes) or 'C1'
    return _desde_permutaciones(nombre, AbelianGroup(*invariantes) if invariantes else CyclicGroup(1))


def _metaciclico(a: int, b: int, r: int) -> GrupoAbstracto:
    """C_a x| C_b con y x y^{-1} = x^r"""
    if b == 2 and r == a - 1:
        return _desde_permutaciones(f"D{a}", DihedralGroup(a))
    elementos = list(product(range(a), range(b)))
    return _desde_producto(
        f"C{a} x| C{b} (r={r})", elementos,
        lambda x, y: ((x[0] + pow(r, x[1], a) * y[0]) % a, (x[1] + y[1]) % b), (0, 0))


def _cuaterniones() -> GrupoAbstracto:
    elementos = list(product(range(4), range(2)))

    def mult(x, y):
        s = x[0] + (y[0] if x[1] == 0 else -y[0])
        if x[1] + y[1] == 2:
            s += 2
        return s % 4, (x[1] + y[1]) % 2
    return _desde_producto("Q8", elementos, mult, (0, 0))


def _alternante_4() -> GrupoAbstracto:
    return _desde_permutaciones("A4", AlternatingGroup(4))


def _heisenberg(p: int) -> GrupoAbstracto:
    elementos = list(product(range(p), repeat=3))
    return _desde_producto(
        f"Heis({p})", elementos,
        lambda x, y: ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p),
        (0, 0, 0))


def _generadores(T: GrupoAbstracto) -> List[int]:
    """Conjunto generador pequeño, elegido de forma determinista"""
    gens: List[int] = []
    generado = {0}
    for x in sorted(range(T.orden), key=lambda x: (-T.orden_de(x), x)):
        if x in generado:
            continue
        gens.append(x)
        generado = _clausura(T, gens)
        if len(generado) == T.orden:
            break
    return gens


def _clausura(T: GrupoAbstracto, gens: Sequence[int]) -> set:
    vistos = {0}
    pendientes = [0]
    while pendientes:
        x = pendientes.pop()
        for g in gens:
            y = T.tabla[x][g]
            if y not in vistos:
                vistos.add(y)
                pendientes.append(y)
    return vistos


def _extender(T: GrupoAbstracto, U: GrupoAbstracto, gens: Sequence[int],
              imagenes: Sequence[int]) -> Optional[Perm]:
    """Homomorfismo T -> U con gens -> imagenes, o None si no está bien definido"""
    phi = {0: 0}
    pendientes = [0]
    while pendientes:
        x = pendientes.pop()
        for g, h in zip(gens, imagenes):
            y, z = T.tabla[x][g], U.tabla[phi[x]][h]
            if y in phi:
                if phi[y] != z:
                    return None
            else:
                phi[y] = z
                pendientes.append(y)
    return tuple(phi[x] for x in range(T.orden))


def _isomorfismos(T: GrupoAbstracto, U: GrupoAbstracto, uno_solo: bool = False) -> List[Perm]:
    if T.orden != U.orden:
        return []
    gens = _generadores(T)
    candidatos = [[y for y in range(U.orden) if U.orden_de(y) == T.orden_de(g)] for g in gens]
    resultado = []
    for imagenes in product(*candidatos):
        phi = _extender(T, U, gens, imagenes)
        if phi is not None and len(set(phi)) == T.orden:
            resultado.append(phi)
            if uno_solo:
                break
    return resultado


@lru_cache(maxsize=None)
def automorfismos(T: GrupoAbstracto) -> Tuple[Perm, ...]:
    return tuple(_isomorfismos(T, T))


def _invariante(T: GrupoAbstracto) -> Tuple:
    return T.abeliano, tuple(sorted(T.orden_de(x) for x in range(T.orden)))


@lru_cache(maxsize=None)
def catalogo(m: int) -> Tuple[GrupoAbstracto, ...]:
    """Un representante por clase de isomorfismo de los grupos de orden m del catálogo"""
    if m == 1:
        return (_abeliano([]),)
    factores = factorint(m)
    # grupos abelianos: producto de particiones de cada exponente
    por_primo = []
    for q, k in sorted(factores.items()):
        opciones = []
        for particion in partitions(k):
            partes = sorted((parte for parte, veces in particion.items() for _ in range(veces)),
                            reverse=True)
            opciones.append([q ** parte for parte in partes])
        por_primo.append(opciones)
    grupos = [_abeliano(sorted(sum(eleccion, []), reverse=True)) for eleccion in product(*por_primo)]
    candidatos = []
    for a in range(2, m):
        if m % a:
            continue
        b = m // a
        for r in range(2, a):
            if pow(r, b, a) == 1 and _coprimos(r, a):
                candidatos.append(_metaciclico(a, b, r))
    if m == 8:
        candidatos.append(_cuaterniones())
    if m == 12:
        candidatos.append(_alternante_4())
    if len(factores) == 1:
        q, k = next(iter(factores.items()))
        if k == 3 and q > 2:
            candidatos.append(_heisenberg(q))
    for T in candidatos:
        if not any(_invariante(T) == _invariante(U) and _isomorfismos(T, U, uno_solo=True)
                   for U in grupos):
            grupos.append(T)
    logger.debug("catálogo de orden %d: %s", m, [T.nombre for T in grupos])
    return tuple(grupos)


def _coprimos(a: int, b: int) -> bool:
    while b:
        a, b = b, a % b
    return a == 1


# Búsqueda de subgrupos regulares normalizados

def _tipo_ciclos(f: Perm) -> Tuple[int, ...]:
    """cycle_type sin pasar por sympy, para el bucle sobre Hol(T)"""
    vistos = [False] * len(f)
    largos = []
    for i in range(len(f)):
        k = 0
        while not vistos[i]:
            vistos[i] = True
            i = f[i]
            k += 1
        if k:
            largos.append(k)
    return tuple(sorted(largos))


def _holomorfo(T: GrupoAbstracto, t: int, alfa: Perm) -> Perm:
    """x -> t alfa(x), elemento de Hol(T)"""
    fila = T.traslacion(t)
    return tuple(fila[alfa[x]] for x in range(T.orden))


def _propagar(f: Dict[int, int], finv: Dict[int, int],
              pares: Sequence[Tuple[Perm, Perm]]) -> Optional[Tuple[Dict[int, int], Dict[int, int]]]:
    """Extiende f: T -> S con f(A t) = g f(t) para cada par (A, g); None si hay conflicto"""
    f, finv = dict(f), dict(finv)
    pendientes = list(f)
    while pendientes:
        t = pendientes.pop()
        for A, g in pares:
            u, x = A[t], g[f[t]]
            if u in f:
                if f[u] != x:
                    return None
            elif x in finv:
                return None
            else:
                f[u] = x
                finv[x] = u
                pendientes.append(u)
    return f, finv


def _embebidos(T: GrupoAbstracto, G: FiniteGroup) -> List[frozenset]:
    """Subgrupos f lambda_T(T) f^{-1} con f^{-1} G f contenido en Hol(T)"""
    m = T.orden
    auts = automorfismos(T)
    gens = G.generators
    tipos = [_tipo_ciclos(g) for g in gens]
    encontrados = set()

    def buscar(nivel: int, pares: List[Tuple[Perm, Perm]], f: Dict[int, int], finv: Dict[int, int]):
        if nivel == len(gens):
            if len(f) == m:
                encontrados.add(frozenset(
                    tuple(f[T.traslacion(t)[finv[x]]] for x in range(m)) for t in range(m)))
            return
        g = gens[nivel]
        # A(e) = t y f(A(e)) = g(f(e)) = g(0)
        destino = g[0]
        opciones = [finv[destino]] if destino in finv else [t for t in range(m) if t not in f]
        for t in opciones:
            for alfa in auts:
                A = _holomorfo(T, t, alfa)
                if _tipo_ciclos(A) != tipos[nivel]:
                    continue
                extendido = _propagar(f, finv, pares + [(A, g)])
                if extendido is not None:
                    buscar(nivel + 1, pares + [(A, g)], *extendido)

    buscar(0, [], {0: 0}, {0: 0})
    return list(encontrados)


def _es_potencia_de_primo_impar(m: int) -> bool:
    factores = factorint(m)
    return len(factores) == 1 and 2 not in factores


def verificar_cap(tamano: int, cap_generico: int = 15, cap_potencia_primo: int = 27) -> None:
    cap = cap_potencia_primo if _es_potencia_de_primo_impar(tamano) else cap_generico
    if tamano > cap:
        raise CapExcedido(f"|S| = {tamano} supera el límite {cap}", cap)


@dataclass(frozen=True)
class Estructura:
    """Subgrupo regular N de Perm(S) normalizado por lambda(Gamma)"""
    elementos: Tuple[Perm, ...]
    tipo: str
    cyclic: bool
    almost_classical: bool = False

    def to_json(self) -> dict:
        return {
            'elements': [list(x) for x in self.elementos],
            'type': self.tipo,
            'regular': True,
            'normalized': True,
            'cyclic': self.cyclic,
            'almost_classical': self.almost_classical,
        }


def enumerate_regular_normalized(Gamma: FiniteGroup, Delta: FiniteGroup,
                                 cap_generico: int = 15, cap_potencia_primo: int = 27) -> List[Estructura]:
    """Todos los subgrupos regulares de Perm(Gamma/Delta) normalizados por lambda(Gamma),
    en orden canónico"""
    tamano, lam = coset_action(Gamma, Delta)
    verificar_cap(tamano, cap_generico, cap_potencia_primo)
    G = FiniteGroup(tamano, tuple(lam(g) for g in Gamma.generators) or (identity(tamano),))
    clasicos = {frozenset(N.elements) for N in _imagenes_de_complementos(Gamma, Delta, lam, tamano)}
    estructuras = []
    for T in catalogo(tamano):
        for elementos in _embebidos(T, G):
            N = FiniteGroup.desde_elementos(tamano, elementos)
            if not (is_regular(N, tamano) and normalizes(G, N)):
                raise SubgrupoInvalido(f"Candidato de tipo {T.nombre} no es regular y normalizado")
            estructuras.append(Estructura(N.elements, T.nombre, T.es_ciclico, elementos in clasicos))
    estructuras.sort(key=lambda s: s.elementos)
    logger.debug("|S|=%d: %d estructuras", tamano, len(estructuras))
    return estructuras


def almost_classical(Gamma: FiniteGroup, Delta: FiniteGroup) -> List[FiniteGroup]:
    """Complementos normales de Delta en Gamma: M normal, M ∩ Delta = 1, M Delta = Gamma"""
    if not Delta.es_subgrupo_de(Gamma):
        raise SubgrupoInvalido("Delta no es subgrupo de Gamma")
    m = Gamma.orden // Delta.orden
    e = identity(Gamma.grado)
    fuera_de_delta = [x for x in Gamma.elements if x not in Delta]
    vistos = set()
    complementos: Dict[frozenset, FiniteGroup] = {}
    # M se arma agregando generadores de a uno; todo elemento no trivial de M está fuera de Delta
    pendientes = [FiniteGroup(Gamma.grado, ())]
    while pendientes:
        M = pendientes.pop()
        if M.orden == m:
            if normalizes(Gamma, M):
                complementos[frozenset(M.elements)] = M
            continue
        for x in fuera_de_delta:
            if x in M:
                continue
            nuevo = FiniteGroup(Gamma.grado, M.generators + (x,))
            if m % nuevo.orden:
                continue
            clave = frozenset(nuevo.elements)
            if clave in vistos:
                continue
            vistos.add(clave)
            if any(y in Delta for y in nuevo.elements if y != e):
                continue
            pendientes.append(nuevo)
    resultado = sorted(complementos.values(), key=lambda M: M.elements)
    logger.debug("complementos normales: %d", len(resultado))
    return resultado


def _imagenes_de_complementos(Gamma: FiniteGroup, Delta: FiniteGroup, lam, tamano: int) -> List[FiniteGroup]:
    return [FiniteGroup(tamano, tuple(lam(x) for x in M.generators))
            for M in almost_classical(Gamma, Delta)]


def radical_galois_group(p: int, n: int, r: int) -> Tuple[FiniteGroup, FiniteGroup]:
    """Gamma = Gal(Q(zeta_n, w_n)/Q(zeta_r)) y Delta = Gal(Q(zeta_n, w_n)/Q(zeta_r, w_n))"""
    gens_gamma, gens_delta = galois_group(p, n, r)
    grado = p ** (2 * n)
    Gamma = FiniteGroup(grado, tuple(tuple(g.imagenes()) for g in gens_gamma))
    Delta = FiniteGroup(grado, tuple(tuple(g.imagenes()) for g in gens_delta))
    return Gamma, Delta


def conteos_esperados(p: int, n: int, r: int) -> Tuple[int, int]:
    total = p ** (n - 1) if r == n else p ** r
    return total, p ** min(r, n - r)


def census(p: int, n: int, r: int, cap_generico: int = 15,
           cap_potencia_primo: int = 27) -> Tuple[List[Estructura], Reporte]:
    """Cuenta las estructuras de Q(zeta_r, w_n)/Q(zeta_r) y las compara con p^r y p^{min(r, n-r)}"""
    inicio = inicio_cronometro()
    Gamma, Delta = radical_galois_group(p, n, r)
    estructuras = enumerate_regular_normalized(Gamma, Delta, cap_generico, cap_potencia_primo)
    casi_clasicas = sum(1 for s in estructuras if s.almost_classical)
    complementos = len(almost_classical(Gamma, Delta))
    total_esperado, clasicas_esperadas = conteos_esperados(p, n, r)
    testigo = None
    if (len(estructuras), casi_clasicas) != (total_esperado, clasicas_esperadas) \
            or complementos != clasicas_esperadas:
        testigo = {'estructuras': len(estructuras), 'casi_clasicas': casi_clasicas,
                   'complementos': complementos, 'esperado': [total_esperado, clasicas_esperadas]}
    reporte = Reporte.crear('gp_enum.census', {'p': p, 'n': n, 'r': r}, inicio, testigo,
                            tamano=p ** n, estructuras=len(estructuras), casi_clasicas=casi_clasicas,
                            tipos=sorted({s.tipo for s in estructuras}))
    return estructuras, reporte


def grupos_desde_json(datos: dict) -> Tuple[FiniteGroup, FiniteGroup]:
    """{"gamma": [[...], ...], "delta": [[...], ...]} con imágenes de los generadores"""
    try:
        gens_gamma = [validar_perm(g) for g in datos['gamma']]
        gens_delta = [validar_perm(g) for g in datos.get('delta', [])]
    except (KeyError, TypeError) as e:
        raise ParametroInvalido(f"Formato de grupos inválido: {e}")
    if not gens_gamma:
        raise ParametroInvalido("Gamma necesita al menos un generador")
    grado = len(gens_gamma[0])
    return (FiniteGroup(grado, tuple(gens_gamma)),
            FiniteGroup(grado, tuple(gens_delta) or (identity(grado),)))
