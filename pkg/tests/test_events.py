import json

from benchcurator.events import SNAPSHOT_EVERY, EventLog


def ev(seq, action="create", **payload):
    return {"seq": seq, "ts": 1000.0 + seq, "actor": "w1", "action": action, "payload": payload}


def test_append_read_roundtrip(tmp_path):
    log = EventLog(tmp_path)
    events = [ev(i) for i in range(1, 8)]
    for e in events:
        log.append(e)
    assert log.read_events() == events
    assert log.recovery.recovered_events == 7
    assert log.recovery.truncated_line is None


def test_read_after_seq(tmp_path):
    log = EventLog(tmp_path)
    for i in range(1, 6):
        log.append(ev(i))
    assert [e["seq"] for e in log.read_events(after_seq=3)] == [4, 5]


def test_missing_log_is_empty(tmp_path):
    assert EventLog(tmp_path).read_events() == []


def test_corrupt_tail_truncated_and_reported(tmp_path):
    log = EventLog(tmp_path)
    for i in range(1, 7):
        log.append(ev(i))
    with open(log.log_path, "a") as fh:
        fh.write('{"seq": 7, "action": "cre')  # torn write
    events = log.read_events()
    assert [e["seq"] for e in events] == [1, 2, 3, 4, 5, 6]
    assert log.recovery.truncated_line == 7
    assert log.recovery.recovered_events == 6
    # the file itself was repaired: a fresh read is clean
    again = EventLog(tmp_path).read_events()
    assert [e["seq"] for e in again] == [1, 2, 3, 4, 5, 6]
    assert EventLog(tmp_path).log_path.read_text().count("\n") == 6


def test_corruption_mid_file_keeps_valid_prefix(tmp_path):
    log = EventLog(tmp_path)
    for i in range(1, 4):
        log.append(ev(i))
    with open(log.log_path, "a") as fh:
        fh.write("not json at all\n")
    log.append(ev(5))
    events = log.read_events()
    assert [e["seq"] for e in events] == [1, 2, 3]
    assert log.recovery.truncated_line == 4


def test_event_without_seq_is_treated_as_corrupt(tmp_path):
    log = EventLog(tmp_path)
    log.append(ev(1))
    with open(log.log_path, "a") as fh:
        fh.write(json.dumps({"action": "create"}) + "\n")
    assert [e["seq"] for e in log.read_events()] == [1]
    assert log.recovery.truncated_line == 2


def test_snapshot_listing_and_latest(tmp_path):
    log = EventLog(tmp_path)
    log.write_snapshot(SNAPSHOT_EVERY, {"n": 1})
    log.write_snapshot(2 * SNAPSHOT_EVERY, {"n": 2})
    assert log.snapshots() == [SNAPSHOT_EVERY, 2 * SNAPSHOT_EVERY]
    seq, state = log.latest_snapshot()
    assert seq == 2 * SNAPSHOT_EVERY
    assert state == {"n": 2}
    assert not list(tmp_path.glob("*.tmp"))  # atomic rename leaves no temp file


def test_latest_snapshot_none(tmp_path):
    assert EventLog(tmp_path).latest_snapshot() is None
