import json
from pathlib import Path

from domain.constants import SCHEMA_VERSION
from domain.models import Certificate


class CertificateStore:
    @staticmethod
    def write(certificate: Certificate, path: str) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(certificate.model_dump(mode="json"), indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")
        return target

    @staticmethod
    def read(path: str) -> Certificate:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"certificate schema {version} is not supported (expected {SCHEMA_VERSION})")
        return Certificate.model_validate(data)
