import os, io, json, csv
from fractions import Fraction
from . import homalg as ha
from . import valuation as vl
from . import catalog

KNOT_FORMAT = (".json",)
class FileManager:
    def __init__(self, data_folder=None):
        self.data_folder = data_folder

    def is_knotfile(self, file: str):
        _, extension = os.path.splitext(file)
        return extension in KNOT_FORMAT

    def get_path(self, file: str):
        if self.data_folder and not os.path.isabs(file) and not os.path.exists(file):
            return os.path.join(self.data_folder, file)
        return file

    def get_files(self, folder: str):
        return [os.path.join(folder, f) for f in sorted(os.listdir(folder)) if os.path.isfile(os.path.join(folder, f)) and self.is_knotfile(f)]

    def read_knot_text(self, text: str):
        return catalog.model_from_json(json.loads(text))

    def read_knot_file(self, file: str):
        with open(self.get_path(file), 'r', encoding='utf-8') as f:
            return self.read_knot_text(f.read())

    def read_complex_file(self, file: str):
        with open(self.get_path(file), 'r', encoding='utf-8') as f:
            return ha.complex_from_json(json.load(f))

    def knot_to_text(self, model):
        return json.dumps(catalog.model_to_json(model), ensure_ascii=False, indent=4)

    def save_knot_file(self, file: str, model):
        with open(file, 'w', encoding='utf-8') as f:
            f.write(self.knot_to_text(model))

    def profile_to_csv(self, samples):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["r", "f_r"])
        for r, value in samples:
            writer.writerow([str(Fraction(r)), vl.format_value(value)])
        return buffer.getvalue()

    def save_profile_csv(self, file: str, samples):
        with open(file, 'w', encoding='utf-8', newline='') as f:
            f.write(self.profile_to_csv(samples))

    def read_profile_csv(self, file: str):
        with open(file, 'r', encoding='utf-8', newline='') as f:
            rows = list(csv.DictReader(f))
        return [(Fraction(row["r"]), Fraction(row["f_r"])) for row in rows]
