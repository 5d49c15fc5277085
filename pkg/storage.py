"""
Storage module for magquot
JSON and CSV reports, golden files, and rule / congruence / element files
"""

import csv
import hashlib
import json
import os

from catalog import from_text, is_builtin, resolve_builtin
from config import GOLDEN_DIR, REPORTS_DIR
from rewriting import format_rules, parse_rules

# Report keys excluded from golden comparison
VOLATILE_KEYS = ("wall_time",)

# =============================================================================
# JSON / CSV Files
# =============================================================================

def ensure_dir(path):
    """Ensure a directory exists."""
    if path and not os.path.exists(path):
        os.makedirs(path)


def load_json(path):
    """
    Load a JSON file.

    Returns:
        Parsed data, or {} if the file is missing or corrupt
    """
    if not os.path.exists(path):
        return {}

    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (json.JSONDecodeError, IOError):
        return {}


def save_json(path, data, verbose=True):
    """
    Save data as JSON with sorted keys.

    Args:
        path: Target file
        data: JSON-serializable data
        verbose: Print an [OK] line
    """
    ensure_dir(os.path.dirname(path))

    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")

    if verbose:
        print(f"[OK] Wrote {path}")


def save_csv(path, rows, verbose=True):
    """
    Save a list of flat dicts as CSV; columns follow the first row.
    """
    ensure_dir(os.path.dirname(path))
    fieldnames = list(rows[0].keys()) if rows else []

    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)

    if verbose:
        print(f"[OK] Wrote {path}")


# =============================================================================
# Reports
# =============================================================================

def input_digest(inputs):
    """SHA-256 of the canonical JSON of the inputs."""
    canonical = json.dumps(inputs, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_report(command, inputs, tables, status, wall_time=0.0, details=None):
    """
    Build a command report.

    Args:
        command: Command name ('dims', 'complete', 'verify', 'caslattice')
        inputs: Canonical description of the command's inputs
        tables: {name: ArityTable or JSON-serializable value}
        status: Outcome string
        wall_time: Seconds spent, excluded from golden comparison
        details: Extra JSON-serializable data

    Returns:
        Report dictionary
    """
    rendered = {}
    for key, value in tables.items():
        rendered[key] = value.to_dict() if hasattr(value, "to_dict") else value

    report = {
        "command": command,
        "inputs": inputs,
        "input_digest": input_digest(inputs),
        "tables": rendered,
        "status": status,
        "wall_time": round(wall_time, 3),
    }
    if details is not None:
        report["details"] = details
    return report


def report_rows(report):
    """Flatten the ArityTable entries of a report into CSV rows."""
    rows = []
    for name, table in report["tables"].items():
        if not isinstance(table, dict) or "values" not in table:
            continue
        unverified = set(table.get("unverified", []))
        for n, value in table["values"].items():
            rows.append({"table": name, "n": int(n), "value": value, "verified": int(n) not in unverified})
    return rows


def default_report_path(command, name, extension="json"):
    safe = name.replace(":", "_").replace(",", "_").replace(os.sep, "_")
    return os.path.join(REPORTS_DIR, command, f"{safe}.{extension}")


# =============================================================================
# Golden Files
# =============================================================================

def golden_path(command, name, golden_dir=None):
    """golden/<command>/<name>.json"""
    return os.path.join(golden_dir or GOLDEN_DIR, command, f"{name}.json")


def _stable(report):
    return {key: value for key, value in report.items() if key not in VOLATILE_KEYS}


def compare_to_golden(report, command, name, golden_dir=None):
    """
    Compare a report with its golden file, ignoring timing.

    Returns:
        (success, message)
    """
    path = golden_path(command, name, golden_dir)
    if not os.path.exists(path):
        return False, f"missing golden file {path}"

    expected = load_json(path)
    if not expected:
        return False, f"golden file {path} is empty or corrupt"

    # round-trip so tuples and ints compare like the stored JSON
    actual = json.loads(json.dumps(_stable(report), sort_keys=True, ensure_ascii=False))
    expected = _stable(expected)
    if actual == expected:
        return True, f"matches {path}"

    differing = sorted(
        key for key in set(actual) | set(expected) if actual.get(key) != expected.get(key)
    )
    return False, f"differs from {path} in {', '.join(differing)}"


# =============================================================================
# Input Files
# =============================================================================

def _read_text(path):
    if not os.path.exists(path):
        raise ValueError(f"no such file: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def _stem(path):
    return os.path.splitext(os.path.basename(path))[0]


def read_rules(path):
    """Read a `LHS -> RHS` rule file."""
    return parse_rules(_read_text(path), name=_stem(path))


def write_rules(path, system, verbose=True):
    ensure_dir(os.path.dirname(path))

    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_rules(system))

    if verbose:
        print(f"[OK] Wrote {path}")


def read_input(spec):
    """
    Resolve a builtin name or read a generator file.

    Raises:
        ValueError for unknown names, missing files and parse errors
    """
    if is_builtin(spec):
        return resolve_builtin(spec)
    if os.path.exists(spec):
        return from_text(_read_text(spec), _stem(spec))
    if ":" in spec:
        # looks like a builtin with a bad index
        return resolve_builtin(spec)
    raise ValueError(f"{spec!r} is neither a builtin nor an existing file")
