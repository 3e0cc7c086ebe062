"""Build the Pips board for the three-clause 1-in-3 example and read off an assignment."""

from nythard.pips import solve_pips
from nythard.pips_reductions import pullback_1in3_pips, reduce_planar_1in3_pips
from nythard.render import pips_ascii, pips_svg
from nythard.sources import is_1in3_satisfying, three_clause_example

formula = three_clause_example()
for connected in (False, True):
    puzzle, layout = reduce_planar_1in3_pips(formula, connected=connected)
    print(f"connected={connected}: {len(puzzle.cells)} cells, {len(puzzle.constraints)} constraints")
    placement = solve_pips(puzzle)
    assignment = pullback_1in3_pips(layout, puzzle, placement)
    print("  assignment:", assignment, "exactly-one:", is_1in3_satisfying(formula, assignment))

print(pips_ascii(puzzle, placement))
with open("pips_gadgets.svg", "w", encoding="utf-8") as fh:
    fh.write(pips_svg(puzzle, placement))
print("wrote pips_gadgets.svg")
