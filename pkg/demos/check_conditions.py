"""Run both tower checks on the bundled two-line tower, step by step."""
from towercalc.conditions import check_tower_theorem1, check_tower_theorem2
from towercalc.corpus import script_text
from towercalc.script import load_tower

top, evidence = load_tower(script_text("two_coordinate_lines.tower"))
print(script_text("two_coordinate_lines.tower"))

for name, reports in (("theorem 1", check_tower_theorem1(top)),
                      ("theorem 2", check_tower_theorem2(top, evidence))):
    print(f"-- {name}")
    for r in reports:
        print(f"step {r.step_index}: {r.verdict.value:<15} {r.notes}")
