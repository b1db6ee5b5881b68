import configparser
import csv
import json
import logging
import os
import shutil
import sys
from typing import Dict, List

import colored

from exceptions import InvalidPathError

CONFIG_SECTION = "bnchain"
CONFIG_KEYS = {"bruteforce_cap": 12, "random_chains": 1000, "seed": 0, "region_k_max": 41}
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def get_root_dir() -> str:
    """get the root directory of the script"""
    if getattr(sys, 'frozen', False):
        return sys._MEIPASS

    return os.path.dirname(os.path.abspath(__file__))


def load_config() -> Dict:
    root_dir = get_root_dir()
    ini_filename = "config.ini"

    if not os.path.isfile(os.path.join(root_dir, ini_filename)):
        shutil.copy(os.path.join(root_dir, "ini_template"), os.path.join(root_dir, ini_filename))

    config = configparser.ConfigParser()
    config.read(os.path.join(root_dir, ini_filename))

    if CONFIG_SECTION not in config:
        raise ValueError("Invalid {0} config file".format(ini_filename))

    settings = {}
    for key, default in CONFIG_KEYS.items():
        try:
            settings[key] = config[CONFIG_SECTION].getint(key, fallback=default)
        except ValueError:
            logging.getLogger(__name__).error("{0} must be an integer in {1}".format(key, ini_filename))
            exit(1)

    settings["log_level"] = config[CONFIG_SECTION].get("log_level", "WARNING").upper()
    if settings["log_level"] not in LOG_LEVELS:
        logging.getLogger(__name__).error("Unknown log_level '{0}' in {1}".format(settings["log_level"], ini_filename))
        exit(1)

    return settings


def ensure_directory(path_param: str) -> str:
    path = os.path.abspath(path_param)

    if os.path.exists(path) and not os.path.isdir(path):
        raise InvalidPathError("Not a folder: {0}".format(path))
    os.makedirs(path, exist_ok=True)

    return path


def read_json(path: str) -> Dict:
    if not os.path.isfile(path):
        raise InvalidPathError("Not a file: {0}".format(path))

    with open(path) as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidPathError("Invalid JSON in {0}: {1}".format(path, e))


def write_json(data, path: str) -> None:
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    logging.getLogger(__name__).info("Wrote {0}".format(path))


def write_rows_csv(rows: List[Dict], path: str) -> None:
    if not rows:
        return

    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    logging.getLogger(__name__).info("Wrote {0} rows to {1}".format(len(rows), path))


def color(str_in: str, color_in: str) -> str:
    return "{0}{1}{2}".format(color_in, str_in, colored.attr('reset'))


def status_str(passed: bool, skipped: bool = False) -> str:
    if skipped:
        return color("SKIP", colored.fg('dark_orange'))
    return color("PASS", colored.fg('chartreuse_2a')) if passed else color("FAIL", colored.fg('red_1'))
