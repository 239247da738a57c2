import json, time, os
import copy
from . import templates as tp

RUN_LOG_NAME = "run-log.json"

class LogManager:
    def __init__(self, command, log_folder):
        self.command = command
        self.log_folder = log_folder

    def _load(self, path):
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)

    def _dump(self, path, data):
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=4)

    def create_log_file(self):
        os.makedirs(self.log_folder, exist_ok=True)
        path = os.path.join(self.log_folder, f"concordia-{self.command}-{int(time.time())}.json")
        document = copy.deepcopy(tp.LOG_FILE)
        document["command"] = self.command
        self._dump(path, document)
        return path

    def update_log_file(self, file, data):
        document = self._load(file)
        records = document.get("data")
        if not isinstance(records, list):
            return False
        records.append(data)
        self._dump(file, document)
        return True

    def save_log_file(self, file: str):
        index = os.path.join(self.log_folder, RUN_LOG_NAME)
        run_log = self._load(index) if os.path.exists(index) else copy.deepcopy(tp.RUN_LOG)
        run_log["updated-list"].append(os.path.basename(file))
        self._dump(index, run_log)
