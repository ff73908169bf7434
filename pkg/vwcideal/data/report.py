import hashlib
import json
import logging
import pathlib
from typing import Any

from vwcideal.core.graph import Graph
from vwcideal.data.edgelist import format_graph
from vwcideal.service.homology import BettiTable, Field

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def flatten_dict(data: dict[str, Any], parent_key: str = "", sep: str = "_") -> dict[str, Any]:
    """Flatten nested dictionary by joining keys with separator.

    Args:
        data: Dictionary to flatten
        parent_key: Parent key for nested fields
        sep: Separator between parent and child keys

    Returns:
        Flattened dictionary
    """
    items = []
    for key, value in data.items():
        new_key = f"{parent_key}{sep}{key}" if parent_key else key
        if isinstance(value, dict):
            items.extend(flatten_dict(value, new_key, sep=sep).items())
        else:
            items.append((new_key, value))
    return dict(items)


def graph_digest(g: Graph) -> str:
    """sha256 of the canonical edge-list text."""
    return hashlib.sha256(format_graph(g).encode()).hexdigest()


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _betti_from_report(entry: dict[str, Any], field: str) -> BettiTable:
    entries = {}
    for key, count in entry["betti"].items():
        i, j = key.split(",")
        entries[(int(i), int(j))] = count
    return BettiTable(entries, Field(field), tuple(entry.get("stripped", ())))


def _text_value(value: Any) -> str:
    if isinstance(value, str):
        # multi-line serializations stay on one line
        return value.strip().replace("\n", "; ")
    return json.dumps(value)


def to_text(report: dict[str, Any]) -> str:
    """``key: value`` lines with nested keys joined by ``_``, then one Betti table per computed field.

    Args:
        report: Report as built by the invariants handler, or any nested dict

    Returns:
        Text rendering ending in a newline
    """
    flat = flatten_dict(report)
    homology = report.get("homology", {})
    lines = [f"{key}: {_text_value(value)}" for key, value in sorted(flat.items())]
    for field, entry in sorted(homology.items()):
        if isinstance(entry, dict):
            lines.append(f"betti table over {field}:")
            lines.append(_betti_from_report(entry, field).to_text())
    return "\n".join(lines) + "\n"


def suite_text(summary: dict[str, Any]) -> str:
    """Pass count line (with the skip count when nonzero), then each counterexample graph verbatim with its failures."""
    head = f"{summary['suite']}: {summary['passed']}/{summary['total']} passed"
    if summary.get("skipped"):
        head += f", {summary['skipped']} skipped"
    lines = [head]
    for outcome in summary["counterexamples"]:
        lines.append(f"counterexample {outcome['digest']}:")
        lines.append(outcome["graph"].rstrip("\n"))
        lines.extend(f"  {failure}" for failure in outcome["failures"])
    return "\n".join(lines) + "\n"


def render(report: dict[str, Any], fmt: str) -> str:
    return to_json(report) if fmt == "json" else to_text(report)


def write_summary(filepath: pathlib.Path, summary: dict[str, Any]) -> None:
    """Write a suite summary as JSON.

    Args:
        filepath: Path to the JSON file
        summary: Suite summary
    """
    filepath.parent.mkdir(parents=True, exist_ok=True)
    filepath.write_text(to_json(summary))
    logger.info(f"suite summary saved to {filepath}")
