"""Generate one code reference page per plapflow module."""

from pathlib import Path

import mkdocs_gen_files

PACKAGE = "plapflow"
SKIPPED = {"__main__"}

nav = mkdocs_gen_files.Nav()

for source in sorted(Path(PACKAGE).rglob("*.py")):
    parts = list(source.with_suffix("").parts)
    if parts[-1] in SKIPPED:
        continue

    page = Path(*parts).with_suffix(".md")
    if parts[-1] == "__init__":
        parts = parts[:-1]
        page = page.with_name("index.md")

    nav[tuple(parts)] = page.as_posix()
    with mkdocs_gen_files.open(Path("reference") / page, "w") as page_file:
        page_file.write(f"::: {'.'.join(parts)}\n")
    mkdocs_gen_files.set_edit_path(Path("reference") / page, source)

with mkdocs_gen_files.open("reference/summary.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
