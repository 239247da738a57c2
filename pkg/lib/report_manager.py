import json
import sys
import os
import copy
import datetime
from . import templates as tp

class ReportManager:
    def __init__(self, report_folder):
        self.report_folder = report_folder

        self.report_document = tp.REPORT_DOCUMENT
        self.profile_document = tp.PROFILE_DOCUMENT
        self.verify_document = tp.VERIFY_DOCUMENT

    def get_resource_path(self, relative_path: str):
        if os.path.isabs(relative_path):
            return relative_path
        if getattr(sys, 'frozen', False):
            # PyInstaller EXE
            base_path = os.path.dirname(sys.executable)
        else:
            # DEVELOP
            base_path = os.path.abspath(self.report_folder or ".")

        return os.path.join(base_path, relative_path)

    def get_json_content(self, file: str):
        try:
            with open(self.get_resource_path(file), 'r', encoding='utf-8') as content:
                json_content = json.load(content)
            return json_content
        except Exception as e:
            print(f"Exception in get_json_content ->{file}: {e}", file=sys.stderr)
            return None

    def set_json_content(self, file: str, data: dict):
        try:
            path = self.get_resource_path(file)
            if os.path.dirname(path):
                os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, 'w', encoding='utf-8') as content:
                json.dump(data, content, ensure_ascii=False, indent=4)
            return True
        except Exception as e:
            print(f"Exception in set_json_content ->{file}: {e}", file=sys.stderr)
            return False

    def created(self):
        return datetime.datetime.now().strftime("%Y:%m:%d:%H:%M:%S")

    def build_report(self, command: str, report: dict):
        document = copy.deepcopy(self.report_document)
        document["command"] = command
        document["created"] = self.created()
        document["knot"] = report.get("knot", "-")
        document["base-change"] = report.get("base_change", "-")
        document["report"] = report
        return document

    def build_profile(self, profile: dict):
        document = copy.deepcopy(self.profile_document)
        document["created"] = self.created()
        document["knot"] = profile["knot"]
        document["profile"] = profile
        return document

    def build_verify(self, rows: list, conjectures: list):
        document = copy.deepcopy(self.verify_document)
        document["created"] = self.created()
        document["rows"] = rows
        document["conjectures"] = conjectures
        document["passed"] = sum(1 for row in rows if row["passed"])
        document["failed"] = len(rows) - document["passed"]
        return document

    def save_report(self, file: str, document: dict):
        return self.set_json_content(file, document)
