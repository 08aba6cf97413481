"""Problem file parsing: JSON first, then the sectioned ``key: value`` format."""
import json
import os
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from greensfn.models.problem import ProblemSpec
from greensfn.utils.errors import ConfigurationError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)


class ProblemSpecParser:
    """Parser for problem files.

    The text format is a list of sections, each opened by a header line such as
    ``Coefficients:`` and followed by ``key: value`` lines. ``#`` starts a comment.
    """

    SECTION_HEADERS = {
        "coefficients": "Coefficients",
        "boundary": "Boundary",
        "rhs": "RightHandSide",
        "grid": "Grid",
        "options": "Options",
    }
    EXPECTED_KEYS = {
        "coefficients": ["a2", "a1", "a0"],
        "boundary": ["preset", "row1", "row2", "d1", "d2"],
        "rhs": ["kind", "dim", "f0", "rho", "c", "m", "mu", "alpha", "eta", "accretive", "label"],
        "grid": ["n"],
    }

    def _extract_json_safely(self, content: str) -> Optional[Dict]:
        """JSON object from the content, or None when it is not JSON."""
        stripped = content.strip()
        if not stripped.startswith("{"):
            return None
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"invalid JSON problem file: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError("a JSON problem file must hold an object")
        return data

    def _clean_lines(self, content: str) -> List[str]:
        lines = []
        for line in content.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                lines.append(line)
        return lines

    def _is_header(self, line: str) -> bool:
        return line.endswith(":") and line[:-1].strip().lower() in {
            h.lower() for h in self.SECTION_HEADERS.values()
        }

    def _extract_section(self, lines: List[str], header: str) -> Optional[Dict[str, str]]:
        """Key/value pairs of one section; None when the section is absent."""
        start = -1
        for i, line in enumerate(lines):
            if line.lower() == f"{header.lower()}:":
                start = i
                break
        if start == -1:
            return None
        end = len(lines)
        for i in range(start + 1, len(lines)):
            if self._is_header(lines[i]):
                end = i
                break
        return self._parse_section_content(lines[start + 1:end], header)

    def _parse_section_content(self, lines: List[str], header: str) -> Dict[str, str]:
        result: Dict[str, str] = {}
        for line in lines:
            if ":" not in line:
                raise ConfigurationError(f"expected 'key: value' in section {header}, got {line!r}")
            key, value = [x.strip() for x in line.split(":", 1)]
            key = key.lower().replace(" ", "_")
            if not value:
                raise ConfigurationError(f"empty value for {key!r} in section {header}")
            result[key] = value
        return result

    def _unknown_keys(self, section: str, values: Dict[str, str]) -> List[str]:
        expected = self.EXPECTED_KEYS.get(section)
        if expected is None:
            return []
        return [f"unknown key {k!r} in section {section}" for k in values if k not in expected]

    def parse(self, content: str, name: str = "problem") -> Tuple[ProblemSpec, List[str]]:
        """Parse a problem file into a ProblemSpec.

        Args:
            content: The raw file text, JSON or sectioned.
            name: Name reported in outputs.

        Returns:
            Tuple of (ProblemSpec, list of warnings)

        Raises:
            ConfigurationError: malformed content or invalid values.
        """
        warnings: List[str] = []
        data = self._extract_json_safely(content)
        if data is None:
            lines = self._clean_lines(content)
            if lines and not self._is_header(lines[0]):
                raise ConfigurationError(f"problem file must start with a section header, got {lines[0]!r}")
            data = {}
            for section, header in self.SECTION_HEADERS.items():
                values = self._extract_section(lines, header)
                if values is None:
                    continue
                if section == "grid":
                    if "n" in values:
                        data["grid"] = values["n"]
                else:
                    data[section] = values
                warnings.extend(self._unknown_keys(section, values))
        else:
            for section in ("coefficients", "boundary", "rhs"):
                if isinstance(data.get(section), dict):
                    warnings.extend(self._unknown_keys(section, {str(k).lower(): "" for k in data[section]}))
            if isinstance(data.get("grid"), dict):
                data["grid"] = data["grid"].get("n")

        data.setdefault("name", name)
        try:
            spec = ProblemSpec(**data)
        except ValidationError as e:
            raise ConfigurationError(f"invalid problem file {name!r}: {e}") from e
        for w in warnings:
            logger.warning("Problem file warning", extra={"problem": name, "warning": w})
        return spec, warnings

    def parse_file(self, path: str) -> Tuple[ProblemSpec, List[str]]:
        try:
            with open(path, encoding="utf-8") as f:
                content = f.read()
        except OSError as e:
            raise ConfigurationError(f"cannot read problem file {path}: {e}") from e
        name = os.path.splitext(os.path.basename(path))[0]
        return self.parse(content, name)
