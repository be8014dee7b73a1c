import logging
from typing import Any, Dict

import pandas as pd
from pymongo import MongoClient, errors

from anomalous_actions.drivers.abstract_driver import AbstractDriver, DBConfig
from anomalous_actions.models.report_model import FullReport

logger = logging.getLogger(__name__)

FAMILY_TABLES = "family_tables"


def _create_mongodb_client(db_config: DBConfig) -> MongoClient:
    """Create and return a MongoDB client based on the DB configuration."""
    try:
        client: MongoClient = MongoClient(
            host=db_config.computed_connection_uri,
            username=db_config.username,
            password=db_config.password,
            port=db_config.port,
            serverSelectionTimeoutMS=5000,
        )
        client.admin.command("ping")
        logger.info("Successfully connected to MongoDB")
        return client
    except errors.ConnectionFailure as e:
        logger.error("Could not connect to MongoDB: %s", e)
        raise
    except Exception as e:
        logger.error("An error occurred while creating MongoDB client: %s", e)
        raise


class MongoDBDriver(AbstractDriver):
    """MongoDB archive: one document per report, one per family table."""

    def __init__(self, db_config: DBConfig) -> None:
        """Initialize MongoDB client and database.

        Args:
            db_config (DBConfig): Database configuration; ``collection`` receives the reports.
        """
        self.reports_collection = db_config.collection
        try:
            self._client = _create_mongodb_client(db_config)
            self._db = self._client[db_config.database]

            for collection in (self.reports_collection, FAMILY_TABLES):
                if collection not in self._db.list_collection_names():
                    self._db.create_collection(collection)
                    logger.info("Created collection: %s", collection)

            self._db[FAMILY_TABLES].create_index("run_id", unique=True)
            logger.info("Created index on 'run_id' for '%s' collection", FAMILY_TABLES)
        except Exception as e:
            logger.error("Error initializing MongoDB: %s", e)
            raise

    def _validate_data(self, data: Dict[str, Any]) -> bool:
        """A report document must carry its '_id' and name."""
        if not isinstance(data, dict) or not data:
            logger.error("Invalid data format. Expected a non-empty dictionary.")
            return False
        if not data.get("_id"):
            logger.error("Invalid data: '_id' is missing or None.")
            return False
        if not data.get("name"):
            logger.error("Invalid data: 'name' is missing or empty.")
            return False
        return True

    def save_report(self, report: FullReport) -> None:
        """Save the report document to the reports collection.

        Args:
            report (FullReport): A finished report.
        """
        if report.finished_at is None:
            logger.error("Report '%s' has not been finished.", report.name)
            raise ValueError("Only finished reports can be archived.")

        data = report.to_dict()
        if not self._validate_data(data):
            raise ValueError("Invalid report data. '_id' and 'name' must be present and non-empty.")

        try:
            self._db[self.reports_collection].insert_one(data)
            logger.info("Report saved successfully for run_id: %s.", data["_id"])
        except errors.DuplicateKeyError:
            logger.error("Duplicate run_id '%s' detected while saving report.", data["_id"])
            raise
        except Exception as e:
            logger.error("Error saving report: %s", e)
            raise

    def save_dataframe(self, run_id: str, df: pd.DataFrame) -> None:
        """Save a family table for the given report run.

        Args:
            run_id (str): Run ID of the report the table belongs to.
            df (pd.DataFrame): Table to be saved.
        """
        if not run_id:
            logger.error("Invalid run_id provided for saving DataFrame: None or empty.")
            raise ValueError("run_id must be a valid, non-empty string.")

        if df.empty:
            logger.error("Invalid DataFrame. Cannot save an empty DataFrame for run_id: %s.", run_id)
            raise ValueError("Cannot save an empty DataFrame.")

        data = {"run_id": run_id, "data": df.to_dict(orient="records")}
        try:
            self._db[FAMILY_TABLES].insert_one(data)
            logger.info("DataFrame for run_id '%s' saved successfully.", run_id)
        except errors.DuplicateKeyError:
            logger.error("Duplicate DataFrame detected for run_id: %s.", run_id)
            raise
        except Exception as e:
            logger.error("Error saving DataFrame for run_id '%s': %s", run_id, e)
            raise

    def close(self) -> None:
        self._client.close()
