"""Report persistence: one JSON document and one CSV of per-trial samples"""
import csv
import json
import logging
from pathlib import Path
from typing import Tuple

from kangaroo_core.harness.experiment import ExperimentReport


CSV_HEADER = ["trial", "seed", "value", "restarts"]


def report_paths(output_path: str) -> Tuple[Path, Path]:
    """<out>.json and <out>.csv, stripping .json from out if given"""
    base = output_path[:-5] if output_path.endswith(".json") else output_path
    return Path(base + ".json"), Path(base + ".csv")


def report_to_json(report: ExperimentReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=False, indent=1) + "\n"


def write_report(report: ExperimentReport, output_path: str) -> Tuple[Path, Path]:
    """Writes the report next to output_path

    :param report: finished report
    :param output_path: path with or without .json
    :return: The JSON and CSV paths written
    """
    json_path, csv_path = report_paths(output_path)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    with json_path.open("w", encoding="utf-8", newline="\n") as json_file:
        json_file.write(report_to_json(report))
    with csv_path.open("w", encoding="utf-8", newline="") as csv_file:
        writer = csv.writer(csv_file, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for trial in report.trials:
            writer.writerow([trial.index, trial.seed, "" if trial.value is None else trial.value, trial.restarts])
    logging.info(f"Report written to {json_path} and {csv_path}")
    return json_path, csv_path
