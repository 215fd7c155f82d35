"""
Database manager for census run and shard bookkeeping (SQLite through SQLAlchemy).
"""
import logging
import os
from contextlib import contextmanager
from datetime import datetime
from typing import Dict, List, Optional, Tuple

from sqlalchemy import create_engine, text
from sqlalchemy.engine import make_url
from sqlalchemy.exc import OperationalError, SQLAlchemyError
from sqlalchemy.orm import Session, sessionmaker
from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from .models import Base, CensusRun, CensusShard
from ..utils.config import get_settings

logger = logging.getLogger(__name__)

# A locked SQLite file surfaces as OperationalError
_retry_locked = retry(
    stop=stop_after_attempt(5),
    wait=wait_exponential(multiplier=0.1, min=0.1, max=2),
    retry=retry_if_exception_type(OperationalError),
    reraise=True,
)


class DatabaseManager:
    """Manages database connections and census bookkeeping"""

    def __init__(self, url: Optional[str] = None):
        """Initialize database manager; the URL defaults to settings.database_url"""
        self.url = url or get_settings().database_url
        self.engine = None
        self.Session = None
        self._initialize_database()

    def _initialize_database(self):
        """Initialize database connection and session factory"""
        url = make_url(self.url)
        if url.drivername.startswith("sqlite") and url.database and url.database != ":memory:":
            directory = os.path.dirname(url.database)
            if directory:
                os.makedirs(directory, exist_ok=True)
        try:
            self.engine = create_engine(self.url, pool_pre_ping=True, echo=False)
            self.Session = sessionmaker(bind=self.engine)
            logger.debug(f"Database connection initialized: {self.url}")
        except SQLAlchemyError as e:
            logger.error(f"Failed to initialize database connection: {e}")
            raise

    def create_tables(self):
        """Create all database tables"""
        try:
            Base.metadata.create_all(self.engine)
            logger.info("Database tables created successfully")
        except SQLAlchemyError as e:
            logger.error(f"Failed to create database tables: {e}")
            raise

    @contextmanager
    def get_session(self) -> Session:
        """Context manager for database sessions"""
        session = self.Session()
        try:
            yield session
            session.commit()
        except Exception as e:
            session.rollback()
            logger.error(f"Database session error: {e}")
            raise
        finally:
            session.close()

    def health_check(self) -> bool:
        """Check database connectivity"""
        try:
            with self.get_session() as session:
                session.execute(text("SELECT 1"))
            return True
        except Exception as e:
            logger.error(f"Database health check failed: {e}")
            return False

    def get_completed_shards(self, run_key: str) -> Dict[int, Tuple[int, int]]:
        """(checkpoint offset, record count) of the completed shards of a run, keyed by stratum"""
        with self.get_session() as session:
            shards = (session.query(CensusShard)
                      .filter(CensusShard.run_key == run_key, CensusShard.status == 'completed')
                      .all())
            return {shard.stratum: (shard.checkpoint_offset, shard.record_count) for shard in shards}

    def get_shard_status(self, run_key: str, stratum: int) -> Optional[str]:
        with self.get_session() as session:
            shard = (session.query(CensusShard)
                     .filter(CensusShard.run_key == run_key, CensusShard.stratum == stratum)
                     .first())
            return shard.status if shard else None

    @_retry_locked
    def set_shard_status(self, run_key: str, stratum: int, status: str, **kwargs):
        """Set or update the status of a shard"""
        with self.get_session() as session:
            shard = (session.query(CensusShard)
                     .filter(CensusShard.run_key == run_key, CensusShard.stratum == stratum)
                     .first())
            if not shard:
                shard = CensusShard(run_key=run_key, stratum=stratum, status=status)
                session.add(shard)
            else:
                shard.status = status

            for key in ('checkpoint_offset', 'record_count', 'error_message'):
                if key in kwargs:
                    setattr(shard, key, kwargs[key])

            if status == 'in_progress':
                shard.started = datetime.utcnow()
            elif status == 'completed':
                shard.completed = datetime.utcnow()
                shard.error_message = None
            shard.last_updated = datetime.utcnow()

    @_retry_locked
    def fail_in_progress(self, run_key: str, message: str) -> int:
        """Mark every in-progress shard of a run as failed; returns how many were marked"""
        with self.get_session() as session:
            shards = (session.query(CensusShard)
                      .filter(CensusShard.run_key == run_key, CensusShard.status == 'in_progress')
                      .all())
            for shard in shards:
                shard.status = 'failed'
                shard.error_message = message
                shard.last_updated = datetime.utcnow()
            return len(shards)

    @_retry_locked
    def clear_run(self, run_key: str):
        """Forget every shard of a run (used when its checkpoint file is gone)"""
        with self.get_session() as session:
            session.query(CensusShard).filter(CensusShard.run_key == run_key).delete()

    @_retry_locked
    def record_run(self, run_key: str, n: int, mode: str, polynomial: str, edge_counts: str,
                   classes: int, distinct: int, unique: int, seconds: float):
        with self.get_session() as session:
            session.add(CensusRun(run_key=run_key, n=n, mode=mode, polynomial=polynomial,
                                  edge_counts=edge_counts, classes=classes,
                                  distinct_polynomials=distinct, unique_classes=unique,
                                  seconds=seconds))

    def get_runs(self, limit: int = 50) -> List[Dict]:
        """Most recent census runs first"""
        with self.get_session() as session:
            runs = session.query(CensusRun).order_by(CensusRun.id.desc()).limit(limit).all()
            return [{
                'run_key': run.run_key, 'n': run.n, 'mode': run.mode, 'P': run.polynomial,
                'edge_counts': run.edge_counts, 'H': run.classes, 'B': run.distinct_polynomials,
                'U': run.unique_classes, 'seconds': run.seconds, 'created': run.created,
            } for run in runs]

    def get_shards(self, run_key: Optional[str] = None) -> List[Dict]:
        with self.get_session() as session:
            query = session.query(CensusShard)
            if run_key:
                query = query.filter(CensusShard.run_key == run_key)
            return [{
                'run_key': s.run_key, 'stratum': s.stratum, 'status': s.status,
                'records': s.record_count,
                'error': s.error_message,
            } for s in query.order_by(CensusShard.run_key, CensusShard.stratum).all()]


# Global database manager instance
db_manager = None


def get_db_manager(url: Optional[str] = None) -> DatabaseManager:
    """Get global database manager instance; a different URL replaces it"""
    global db_manager
    if db_manager is None or (url is not None and db_manager.url != url):
        db_manager = DatabaseManager(url)
    return db_manager


def init_database(url: Optional[str] = None) -> DatabaseManager:
    """Initialize database with tables"""
    manager = get_db_manager(url)
    manager.create_tables()
    return manager


def reset_db_manager():
    global db_manager
    if db_manager is not None and db_manager.engine is not None:
        db_manager.engine.dispose()
    db_manager = None
