"""
Gestión de la sesión de verificación en curso
"""
import random
import uuid
from typing import List, Optional

from models.reporte import EstadoReporte, Reporte


class Session:
    """Clase singleton con la corrida actual: identificador, semilla y reportes emitidos"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Session, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return
        self._initialized = True
        self._run_id: Optional[str] = None
        self._semilla: int = 0
        self._reportes: List[Reporte] = []
        self._guardar = True

    @property
    def run_id(self) -> Optional[str]:
        return self._run_id

    @property
    def semilla(self) -> int:
        return self._semilla

    @property
    def reportes(self) -> List[Reporte]:
        return list(self._reportes)

    @property
    def activa(self) -> bool:
        return self._run_id is not None

    @property
    def todos_pasan(self) -> bool:
        return all(r.paso for r in self._reportes)

    def iniciar(self, semilla: int, guardar: bool = True) -> str:
        """Abre una corrida nueva"""
        self._run_id = uuid.uuid4().hex[:12]
        self._semilla = semilla
        self._reportes = []
        self._guardar = guardar
        return self._run_id

    def rng(self, desplazamiento: int = 0) -> random.Random:
        """Generador determinista derivado de la semilla de la corrida"""
        return random.Random(self._semilla + desplazamiento)

    def registrar(self, reporte: Reporte) -> Reporte:
        """Agrega el reporte a la corrida y lo persiste si corresponde"""
        reporte.run_id = self._run_id
        self._reportes.append(reporte)
        if self._guardar:
            reporte.guardar()
        return reporte

    def conteo(self, estado: EstadoReporte) -> int:
        return sum(1 for r in self._reportes if r.estado == estado)

    def cerrar(self) -> None:
        """Cierra la corrida"""
        self._run_id = None
        self._reportes = []

# Instancia global de sesión
session = Session()
