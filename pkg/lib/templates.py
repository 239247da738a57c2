APP_INFO = {
    "name": "concordia",
    "version": "1.0.0"
}

LOG_FILE = {
    "app": APP_INFO,
    "command": "-",
    "data": []
}

RUN_LOG = {
    "updated-list": []
}

REPORT_DOCUMENT = {
    "app": APP_INFO,
    "command": "-",
    "created": "-",
    "knot": "-",
    "base-change": "-",
    "report": {}
}

PROFILE_DOCUMENT = {
    "app": APP_INFO,
    "command": "profile",
    "created": "-",
    "knot": "-",
    "profile": {}
}

VERIFY_DOCUMENT = {
    "app": APP_INFO,
    "command": "verify",
    "created": "-",
    "passed": 0,
    "failed": 0,
    "rows": [],
    "conjectures": []
}
