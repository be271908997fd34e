from domain.constants import LEDGER_ENV_VAR
from infrastructure.ledger import Ledger, LedgerRecord


def test_append_never_rewrites_earlier_lines(tmp_path):
    ledger = Ledger(str(tmp_path / "runs" / "ledger.jsonl"))
    ledger.append(LedgerRecord(command="verify", verified=True, payload={"claim": "d[2](81n+44)=0 mod 81"}))
    first = ledger.path.read_text(encoding="utf-8")
    ledger.append(LedgerRecord(command="certify", verified=False, payload={"failed_stage": "delta_star"}))

    text = ledger.path.read_text(encoding="utf-8")
    assert text.startswith(first)
    records = ledger.read()
    assert [r.command for r in records] == ["verify", "certify"]
    assert records[1].payload == {"failed_stage": "delta_star"}


def test_missing_ledger_reads_empty(tmp_path):
    assert Ledger(str(tmp_path / "none.jsonl")).read() == []


def test_ledger_path_from_environment(tmp_path, monkeypatch):
    target = tmp_path / "env.jsonl"
    monkeypatch.setenv(LEDGER_ENV_VAR, str(target))
    ledger = Ledger()
    ledger.append(LedgerRecord(command="expand", verified=True, payload={}))
    assert ledger.path == target
    assert len(ledger.read()) == 1


def test_records_are_timestamped():
    record = LedgerRecord(command="expand", verified=True, payload={})
    assert record.timestamp.endswith("+00:00")
    assert record.schema_version == 1
