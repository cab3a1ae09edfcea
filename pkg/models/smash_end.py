"""
Producto smash Q(w_n)#H_n, su modelo matricial dentro de End_Q(Q(w_n)) y los
subespacios Hom(Q(w_n), Q(w_m)) de niveles finitos.

Convención de matrices: la columna k es el vector de coordenadas de la imagen
de w^k en la base {1, w, ..., w^{p^n-1}}, con índices desde 0.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

from sympy import QQ

from models.errores import DivisionPorCero, NivelIncompatible, ParametroInvalido
from models.reporte import Reporte, inicio_cronometro
from utils.helpers import Rat, format_rat, parse_rat, rat, validar_nivel, validar_primo_impar
from utils.linalg import producto, rango

logger = logging.getLogger(__name__)

Indice = Tuple[int, int]


@dataclass
class SmashElt:
    p: int
    n: int
    a: Rat
    terms: Dict[Indice, Rat] = field(default_factory=dict)

    def __post_init__(self):
        orden = self.p ** self.n
        limpio = {}
        for (j, i), c in self.terms.items():
            c = rat(c)
            if c != 0:
                clave = (j % orden, i % orden)
                limpio[clave] = limpio.get(clave, QQ(0)) + c
        self.terms = {k: v for k, v in limpio.items() if v != 0}
        self.a = rat(self.a)

    @property
    def orden(self) -> int:
        return self.p ** self.n

    @staticmethod
    def basico(p: int, n: int, a, j: int, i: int, c=1) -> 'SmashElt':
        """c · w^j # e_{n,i}"""
        return SmashElt(p, n, a, {(j, i): c})

    @staticmethod
    def unidad(p: int, n: int, a) -> 'SmashElt':
        """1 # 1 = sum_i 1 # e_i"""
        return SmashElt(p, n, a, {(0, i): 1 for i in range(p ** n)})

    def __mul__(self, otro: 'SmashElt') -> 'SmashElt':
        return smash_mult(self, otro)

    def __add__(self, otro: 'SmashElt') -> 'SmashElt':
        _mismos_parametros(self, otro)
        terms = dict(self.terms)
        for k, v in otro.terms.items():
            terms[k] = terms.get(k, QQ(0)) + v
        return SmashElt(self.p, self.n, self.a, terms)

    def __eq__(self, otro) -> bool:
        return (isinstance(otro, SmashElt) and (self.p, self.n, self.a) == (otro.p, otro.n, otro.a)
                and self.terms == otro.terms)

    def to_json(self) -> dict:
        return {
            'p': self.p, 'n': self.n, 'a': format_rat(self.a),
            'terms': [[j, i, format_rat(c)] for (j, i), c in sorted(self.terms.items())],
        }


@dataclass(frozen=True)
class QMatrix:
    p: int
    n: int
    a: Rat
    filas: Tuple[Tuple[Rat, ...], ...]

    def __post_init__(self):
        orden = self.p ** self.n
        if len(self.filas) != orden or any(len(f) != orden for f in self.filas):
            raise ParametroInvalido(f"La matriz debe ser {orden}x{orden}")

    def __mul__(self, otro: 'QMatrix') -> 'QMatrix':
        return QMatrix(self.p, self.n, self.a,
                       tuple(tuple(f) for f in producto(self.filas, otro.filas)))

    def aplanar(self) -> List[Rat]:
        return [c for f in self.filas for c in f]

    def to_json(self) -> dict:
        return {'p': self.p, 'n': self.n, 'a': format_rat(self.a),
                'rows': [[format_rat(c) for c in f] for f in self.filas]}

    @staticmethod
    def from_json(datos: Mapping) -> 'QMatrix':
        return QMatrix(int(datos['p']), int(datos['n']), parse_rat(datos['a']),
                       tuple(tuple(parse_rat(c) for c in f) for f in datos['rows']))


def _mismos_parametros(x: SmashElt, y: SmashElt) -> None:
    if (x.p, x.n, x.a) != (y.p, y.n, y.a):
        raise NivelIncompatible("Productos smash con parámetros distintos")


def smash_mult(A: SmashElt, B: SmashElt) -> SmashElt:
    """(w^j#e_i)(w^k#e_l) = w^{j+k}#e_l si k+l = i (mod p^n), 0 si no; w^{p^n} = a"""
    _mismos_parametros(A, B)
    orden = A.orden
    terms: Dict[Indice, Rat] = {}
    for (j, i), c in A.terms.items():
        for (k, l), d in B.terms.items():
            if (k + l) % orden != i:
                continue
            s = j + k
            coef = c * d
            if s >= orden:
                coef *= A.a
                s -= orden
            terms[(s, l)] = terms.get((s, l), QQ(0)) + coef
    return SmashElt(A.p, A.n, A.a, terms)


def _entradas(A: SmashElt) -> Dict[Indice, Rat]:
    """Entradas no nulas (fila, columna) de la matriz de A"""
    orden = A.orden
    entradas: Dict[Indice, Rat] = {}
    for (j, i), c in A.terms.items():
        fila = j + i
        valor = c
        if fila >= orden:
            fila -= orden
            valor = c * A.a
        entradas[(fila, i)] = entradas.get((fila, i), QQ(0)) + valor
    return entradas


def to_end_matrix(A: SmashElt) -> QMatrix:
    """(w^j#e_i)(w^k) = delta_{ik} w^{j+k}: columna i, fila j+i reducida con w^{p^n} = a"""
    orden = A.orden
    filas = [[QQ(0)] * orden for _ in range(orden)]
    for (r, c), v in _entradas(A).items():
        filas[r][c] += v
    return QMatrix(A.p, A.n, A.a, tuple(tuple(f) for f in filas))


def _producto_disperso(x: Dict[Indice, Rat], y: Dict[Indice, Rat]) -> Dict[Indice, Rat]:
    r: Dict[Indice, Rat] = {}
    for (i, k), u in x.items():
        for (k2, j), v in y.items():
            if k == k2:
                r[(i, j)] = r.get((i, j), QQ(0)) + u * v
    return {k: v for k, v in r.items() if v != 0}


def elemento_aleatorio(p: int, n: int, a, rng: random.Random, terminos: int = 4) -> SmashElt:
    """Elemento disperso con coeficientes enteros pequeños"""
    orden = p ** n
    terms = {}
    for _ in range(terminos):
        terms[(rng.randrange(orden), rng.randrange(orden))] = QQ(rng.randint(-5, 5), rng.randint(1, 3))
    return SmashElt(p, n, a, terms)


def iso_check(p: int, n: int, a, semilla: int = 0, muestras: int = 12) -> Reporte:
    """Rango p^{2n} de las imágenes de la base y multiplicatividad de to_end_matrix"""
    inicio = inicio_cronometro()
    validar_primo_impar(p)
    validar_nivel(n)
    a = rat(a)
    orden = p ** n
    base = [SmashElt.basico(p, n, a, j, i) for j in range(orden) for i in range(orden)]
    vectores = [to_end_matrix(x).aplanar() for x in base]
    r = rango(vectores, orden * orden)
    testigo = None
    if r != orden * orden:
        testigo = {'rango': r, 'esperado': orden * orden}
    pares_exhaustivos = orden <= 9
    if testigo is None and pares_exhaustivos:
        dispersas = [_entradas(x) for x in base]
        for x, dx in zip(base, dispersas):
            for y, dy in zip(base, dispersas):
                if _entradas(smash_mult(x, y)) != _producto_disperso(dx, dy):
                    testigo = {'par': [x.to_json(), y.to_json()]}
                    break
            if testigo:
                break
    if testigo is None:
        rng = random.Random(semilla)
        for _ in range(muestras):
            x = elemento_aleatorio(p, n, a, rng)
            y = elemento_aleatorio(p, n, a, rng)
            if to_end_matrix(smash_mult(x, y)) != to_end_matrix(x) * to_end_matrix(y):
                testigo = {'par': [x.to_json(), y.to_json()]}
                break
    return Reporte.crear('smash_end.iso', {'p': p, 'n': n, 'a': format_rat(a), 'seed': semilla},
                         inicio, testigo, rango=r, pares_exhaustivos=pares_exhaustivos,
                         muestras=muestras)


def decompose_endomorphism(M: QMatrix, p: int, n: int, a) -> Dict[Indice, Rat]:
    """Coeficientes únicos c_{j,i} con sum c_{j,i} w^j#e_i -> M.

    La entrada (r, k) es c_{(r-k) mod p^n, k}, multiplicada por a cuando el
    exponente de w dio la vuelta (r < k).
    """
    a = rat(a)
    if a == 0:
        raise DivisionPorCero("Con a = 0 los coeficientes no son únicos")
    if (M.p, M.n) != (p, n):
        raise NivelIncompatible(f"Matriz de nivel p={M.p}, n={M.n}; se pidió p={p}, n={n}")
    if M.a != a:
        raise ParametroInvalido(f"Matriz con radicando {format_rat(M.a)}, se pidió {format_rat(a)}")
    orden = p ** n
    coefs: Dict[Indice, Rat] = {}
    for r in range(orden):
        for k in range(orden):
            v = M.filas[r][k]
            if v == 0:
                continue
            coefs[((r - k) % orden, k)] = v / a if r < k else v
    return coefs


def generic_matrix(p: int, n: int, a, c: Mapping[Indice, object]) -> QMatrix:
    """Matriz de sum c_{j,i} w^j#e_i: entradas sobre la diagonal llevan un factor a"""
    return to_end_matrix(SmashElt(p, n, a, dict(c)))


def nine_matrices(a) -> Dict[Indice, QMatrix]:
    """Las nueve matrices de w^j#e_i para p = 3, n = 1"""
    return {(j, i): to_end_matrix(SmashElt.basico(3, 1, a, j, i)) for j in range(3) for i in range(3)}


def hom_subalgebra_basis(n: int, m: int, p: int) -> Tuple[List[Indice], int]:
    """Índices (j, i) que generan Hom(Q(w_n), Q(w_m)).

    m >= n: w_m^j # e_{m,i} con i en p^{m-n} Z_{p^n}, j < p^m.
    m < n: w_n^j # e_{n,i} con p^{n-m} | j + i (como enteros).
    """
    validar_primo_impar(p)
    validar_nivel(n)
    validar_nivel(m)
    if m >= n:
        salto = p ** (m - n)
        pares = [(j, t * salto) for j in range(p ** m) for t in range(p ** n)]
    else:
        divisor = p ** (n - m)
        pares = [(j, i) for j in range(p ** n) for i in range(p ** n) if (j + i) % divisor == 0]
    return pares, len(pares)


def hom_subalgebra_check(n: int, m: int, p: int, a) -> Reporte:
    """Dimensión p^{n+m}, dominio/codominio correctos, rango y cerradura bajo smash_mult"""
    inicio = inicio_cronometro()
    a = rat(a)
    pares, dim = hom_subalgebra_basis(n, m, p)
    nivel = max(n, m)
    orden = p ** nivel
    testigo = None
    if dim != p ** (n + m):
        testigo = {'dimension': dim, 'esperada': p ** (n + m)}
    if testigo is None:
        for j, i in pares:
            entradas = _entradas(SmashElt.basico(p, nivel, a, j, i))
            for (r, c) in entradas:
                # dominio Q(w_n) dentro de Q(w_m): columnas múltiplos de p^{m-n}
                if m >= n and c % p ** (m - n) != 0:
                    testigo = {'par': [j, i], 'columna': c}
                # codominio Q(w_m) dentro de Q(w_n): filas múltiplos de p^{n-m}
                if m < n and r % p ** (n - m) != 0:
                    testigo = {'par': [j, i], 'fila': r}
            if testigo:
                break
    if testigo is None:
        vectores = [to_end_matrix(SmashElt.basico(p, nivel, a, j, i)).aplanar() for j, i in pares]
        r = rango(vectores, orden * orden)
        if r != dim:
            testigo = {'rango': r, 'esperado': dim}
    cerrado = True
    if testigo is None:
        conjunto = set(pares)
        for x in pares:
            for y in pares:
                prod = smash_mult(SmashElt.basico(p, nivel, a, *x), SmashElt.basico(p, nivel, a, *y))
                if any(k not in conjunto for k in prod.terms):
                    testigo = {'producto_fuera': [list(x), list(y)]}
                    cerrado = False
                    break
            if testigo:
                break
    return Reporte.crear('smash_end.hom_subalgebra', {'p': p, 'n': n, 'm': m, 'a': format_rat(a)},
                         inicio, testigo, dimension=dim, cerrado=cerrado)


def restringir_a_nivel(A: SmashElt, n: int) -> List[List[Rat]]:
    """Matriz de A restringida a Q(w_n) ⊂ Q(w_m), m = A.n >= n.

    La columna t es la imagen de w_n^t = w_m^{t p^{m-n}}.
    """
    if n > A.n:
        raise NivelIncompatible(f"Q(w_{n}) no está contenido en Q(w_{A.n})")
    salto = A.p ** (A.n - n)
    return [[fila[t * salto] for t in range(A.p ** n)] for fila in to_end_matrix(A).filas]


def incluir_en_siguiente(filas: List[List[Rat]], p: int) -> List[List[Rat]]:
    """Coordenadas en Q(w_m) -> coordenadas en Q(w_{m+1}), con w_m^k = w_{m+1}^{pk}"""
    ncols = len(filas[0])
    nuevas = [[QQ(0)] * ncols for _ in range(p * len(filas))]
    for k, fila in enumerate(filas):
        nuevas[p * k] = list(fila)
    return nuevas


def direct_limit_check(n: int, p: int, m_max: int, a=2) -> Reporte:
    """Hom(Q(w_n), Q(w_m)) para n <= m <= m_max forma un sistema directo que se estabiliza.

    Se comparan operadores sobre Q(w_n): w_m^j#e_{m,i} seguido de la inclusión
    Q(w_m) -> Q(w_{m+1}) coincide con w_{m+1}^{pj}#e_{m+1,pi}. Además las
    e_{m,i} restringidas a Q(w_n) generan Hbar_{m,n}, de dimensión p^n en cada nivel.
    """
    validar_primo_impar(p)
    validar_nivel(n)
    if m_max <= n:
        raise ParametroInvalido(f"m_max debe superar a n = {n}")
    a = rat(a)
    inicio = inicio_cronometro()
    testigo = None
    dimensiones = {}
    for m in range(n, m_max):
        restringidas = [restringir_a_nivel(SmashElt.basico(p, m, a, 0, i), n) for i in range(p ** m)]
        r = rango([[c for f in M for c in f] for M in restringidas], p ** m * p ** n)
        dimensiones[m] = r
        if r != p ** n:
            testigo = {'m': m, 'rango': r, 'esperado': p ** n}
            break
        for j, i in hom_subalgebra_basis(n, m, p)[0]:
            origen = incluir_en_siguiente(restringir_a_nivel(SmashElt.basico(p, m, a, j, i), n), p)
            destino = restringir_a_nivel(SmashElt.basico(p, m + 1, a, p * j, p * i), n)
            if origen != destino:
                testigo = {'m': m, 'j': j, 'i': i}
                break
        if testigo:
            break
    logger.debug("límite directo n=%d: dimensiones %s", n, dimensiones)
    return Reporte.crear('smash_end.direct_limit', {'p': p, 'n': n, 'm_max': m_max, 'a': format_rat(a)},
                         inicio, testigo, dimensiones={str(k): v for k, v in dimensiones.items()})


def nine_matrices_check(a) -> Reporte:
    """Las nueve matrices coinciden con el patrón: única entrada en (j+i mod 3, i), a si j+i >= 3"""
    inicio = inicio_cronometro()
    a = rat(a)
    testigo = None
    for (j, i), M in sorted(nine_matrices(a).items()):
        esperado = [[QQ(0)] * 3 for _ in range(3)]
        esperado[(j + i) % 3][i] = a if j + i >= 3 else QQ(1)
        if [list(f) for f in M.filas] != esperado:
            testigo = {'j': j, 'i': i, 'matriz': M.to_json()}
            break
    return Reporte.crear('smash_end.nine_matrices', {'a': format_rat(a)}, inicio, testigo)
