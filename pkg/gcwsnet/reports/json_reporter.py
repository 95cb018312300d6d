"""
JSON Reporter

Machine-readable validation output: a JSON array of McReport objects.
"""

import json
from typing import Any, Dict, List, Sequence

from gcwsnet.validate.models import McReport


class JSONReporter:
    """Generates JSON reports."""

    def generate(self, reports: Sequence[McReport]) -> str:
        """
        Generate JSON report.

        Args:
            reports: McReport objects, in run order

        Returns:
            JSON string
        """
        return json.dumps(self.generate_list(reports), indent=2, allow_nan=True)

    def generate_list(self, reports: Sequence[McReport]) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in reports]

    @staticmethod
    def load(text: str) -> List[McReport]:
        """Parse a report file back into McReport objects."""
        return [McReport.from_dict(item) for item in json.loads(text)]


__all__ = ["JSONReporter"]
