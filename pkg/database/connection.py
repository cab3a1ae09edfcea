"""
Módulo de conexión y gestión de la base de datos SQLite
(configuración persistida e historial de reportes)
"""
import logging
import os
import sqlite3
from contextlib import contextmanager
from typing import Optional, List, Dict, Any, Tuple

logger = logging.getLogger(__name__)

# Ruta por defecto; HOPF_DB_PATH la reemplaza
DB_PATH = os.path.join(os.path.dirname(__file__), '..', 'hopf.db')


def ruta_db() -> str:
    return os.environ.get('HOPF_DB_PATH', DB_PATH)


class Database:
    """Clase singleton para gestionar la conexión a la base de datos"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Database, cls).__new__(cls)
            cls._instance._inicializadas = set()
        return cls._instance

    def _init_database(self, conn: sqlite3.Connection) -> None:
        """Crea el esquema si la base aún no lo tiene"""
        cursor = conn.cursor()

        # Tabla de Configuración (una sola fila, ID = 1)
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS Configuracion (
                ID INTEGER PRIMARY KEY,
                P INTEGER NOT NULL DEFAULT 3,
                N INTEGER NOT NULL DEFAULT 2,
                Radicando TEXT NOT NULL DEFAULT '2/1',
                Nivel INTEGER NOT NULL DEFAULT 3,
                Semilla INTEGER NOT NULL DEFAULT 20240917,
                Cap_Generico INTEGER NOT NULL DEFAULT 15,
                Cap_Potencia_Primo INTEGER NOT NULL DEFAULT 27,
                Limite_Dim_Profinita INTEGER NOT NULL DEFAULT 20000,
                Instancias_Verify_All TEXT NOT NULL DEFAULT '3:1,3:2,5:1,7:1,3:3',
                Instancias_Census TEXT NOT NULL DEFAULT '3:1:0,3:2:0,3:2:1,3:2:2',
                Formato TEXT NOT NULL DEFAULT 'text' CHECK(Formato IN ('text', 'json')),
                Fecha_Actualizacion TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        ''')

        # Tabla de Reportes
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS Reportes (
                ID INTEGER PRIMARY KEY AUTOINCREMENT,
                Run_ID TEXT,
                Claim TEXT NOT NULL,
                Parametros TEXT NOT NULL,
                Estado TEXT NOT NULL CHECK(Estado IN ('pass', 'fail', 'skipped')),
                Witness TEXT,
                Detalle TEXT,
                Elapsed_MS INTEGER DEFAULT 0,
                Fecha TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        ''')
        cursor.execute('CREATE INDEX IF NOT EXISTS idx_reportes_run ON Reportes(Run_ID)')
        conn.commit()

    @contextmanager
    def get_connection(self):
        """Context manager para obtener una conexión a la base de datos"""
        ruta = ruta_db()
        conn = sqlite3.connect(ruta)
        conn.row_factory = sqlite3.Row
        try:
            if ruta not in self._inicializadas:
                self._init_database(conn)
                self._inicializadas.add(ruta)
                logger.debug("esquema inicializado en %s", ruta)
            yield conn
        finally:
            conn.close()

    def execute(self, query: str, params: Tuple = ()) -> int:
        """Ejecuta una sentencia de escritura; retorna lastrowid"""
        with self.get_connection() as conn:
            cursor = conn.execute(query, params)
            conn.commit()
            logger.debug("sentencia ejecutada, lastrowid=%s", cursor.lastrowid)
            return cursor.lastrowid

    def _filas(self, query: str, params: Tuple, limite: Optional[int]) -> List[sqlite3.Row]:
        with self.get_connection() as conn:
            cursor = conn.execute(query, params)
            return cursor.fetchall() if limite is None else cursor.fetchmany(limite)

    def fetch_one(self, query: str, params: Tuple = ()) -> Optional[Dict[str, Any]]:
        filas = self._filas(query, params, 1)
        return dict(filas[0]) if filas else None

    def fetch_all(self, query: str, params: Tuple = ()) -> List[Dict[str, Any]]:
        """Filas como diccionarios columna -> valor"""
        return [dict(fila) for fila in self._filas(query, params, None)]


# Instancia global de la base de datos
db = Database()
