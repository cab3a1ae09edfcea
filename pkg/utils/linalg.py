"""
Álgebra lineal exacta sobre Q apoyada en DomainMatrix de sympy
"""
import logging
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import connected_components

logger = logging.getLogger(__name__)

Vector = List


def matriz(filas: Sequence[Sequence], ncols: int = None) -> DomainMatrix:
    """Construye una DomainMatrix densa sobre QQ a partir de filas de racionales"""
    filas = [[QQ(c) if isinstance(c, int) else c for c in f] for f in filas]
    if ncols is None:
        ncols = len(filas[0]) if filas else 0
    return DomainMatrix(filas, (len(filas), ncols), QQ)


def matriz_dispersa(entradas: Dict[int, Dict[int, object]], forma: Tuple[int, int]) -> DomainMatrix:
    """Construye una DomainMatrix dispersa (dict de dicts) sin ceros explícitos"""
    limpio = {}
    for i, fila in entradas.items():
        f = {j: (QQ(v) if isinstance(v, int) else v) for j, v in fila.items() if v != 0}
        if f:
            limpio[i] = f
    return DomainMatrix(limpio, forma, QQ)


def filas_a_dispersa(filas: Sequence[Sequence], ncols: int) -> DomainMatrix:
    entradas = {i: {j: v for j, v in enumerate(f) if v != 0} for i, f in enumerate(filas)}
    return matriz_dispersa(entradas, (len(filas), ncols))


def rango(filas: Sequence[Sequence], ncols: int = None) -> int:
    """Rango exacto del conjunto de vectores fila"""
    if not filas:
        return 0
    if ncols is None:
        ncols = len(filas[0])
    r = filas_a_dispersa(filas, ncols).rank()
    logger.debug("rango de %d vectores en dimensión %d: %d", len(filas), ncols, r)
    return r


def nucleo(filas: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Base del núcleo derecho {x : A x = 0}; cada vector tiene longitud ncols"""
    if not filas or all(all(c == 0 for c in f) for f in filas):
        return [[QQ(1) if j == i else QQ(0) for j in range(ncols)] for i in range(ncols)]
    m = filas_a_dispersa(filas, ncols).to_dense()
    base = m.nullspace()
    vectores = [list(fila) for fila in base.to_list()] if base.shape[0] else []
    logger.debug("núcleo de %dx%d: dimensión %d", len(filas), ncols, len(vectores))
    return [v for v in vectores if any(c != 0 for c in v)]


def nucleo_disperso(entradas: Dict[int, Dict[int, object]], forma: Tuple[int, int]) -> List[Vector]:
    """Núcleo derecho de una matriz dispersa, resuelto por bloques.

    Dos incógnitas quedan en el mismo bloque si aparecen juntas en alguna fila;
    cada fila vive entonces en un único bloque y el núcleo total es la suma
    directa de los núcleos de los bloques. Las columnas nulas dan vectores
    canónicos.
    """
    ncols = forma[1]
    filas = {i: {j: v for j, v in fila.items() if v != 0} for i, fila in entradas.items()}
    filas = {i: fila for i, fila in filas.items() if fila}
    aristas = []
    for fila in filas.values():
        columnas = sorted(fila)
        aristas.extend((columnas[0], j) for j in columnas[1:])
    usadas = sorted({j for fila in filas.values() for j in fila})
    bloques = connected_components((usadas, aristas)) if usadas else []
    vectores: List[Vector] = []
    libres = set(range(ncols)) - set(usadas)
    for j in sorted(libres):
        vectores.append([QQ(1) if k == j else QQ(0) for k in range(ncols)])
    bloque_de = {j: b for b, columnas in enumerate(bloques) for j in columnas}
    filas_por_bloque: Dict[int, List[Dict[int, object]]] = {}
    for fila in filas.values():
        filas_por_bloque.setdefault(bloque_de[min(fila)], []).append(fila)
    for b, columnas in enumerate(bloques):
        columnas = sorted(columnas)
        local = {j: k for k, j in enumerate(columnas)}
        sub = {r: {local[j]: v for j, v in fila.items()} for r, fila in enumerate(filas_por_bloque[b])}
        base = matriz_dispersa(sub, (len(sub), len(columnas))).to_dense().nullspace()
        for fila in (base.to_list() if base.shape[0] else []):
            if not any(c != 0 for c in fila):
                continue
            v = [QQ(0)] * ncols
            for k, c in enumerate(fila):
                v[columnas[k]] = c
            vectores.append(v)
    logger.debug("núcleo disperso %dx%d: %d bloques, dimensión %d",
                 forma[0], ncols, len(bloques), len(vectores))
    return vectores


def mismo_span(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    """Igualdad de subespacios por rango de la unión"""
    ra, rb = rango(a, ncols), rango(b, ncols)
    return ra == rb == rango(list(a) + list(b), ncols)


def en_span(base: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    return rango(base, ncols) == rango(list(base) + [v], ncols)


def producto(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    """Producto exacto de matrices dadas por filas"""
    return (matriz(a) * matriz(b)).to_list()


def identidad(n: int) -> List[List]:
    return [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)]
