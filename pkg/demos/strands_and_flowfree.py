"""Strands instances from a 1-in-3 formula and from a Flow Free board."""

from nythard.render import strands_ascii
from nythard.sources import embed, oracle_1in3
from nythard.strands import solve_strands
from nythard.strands_reductions import (
    FlowFreeInstance,
    pullback_1in3_strands,
    pullback_flowfree,
    reduce_flowfree,
    reduce_planar_1in3_strands,
)

formula = embed(("x1", "x2", "x3", "x4"), [("x1", "x2", "x3"), ("x2", "x3", "x4")])
inst, layout = reduce_planar_1in3_strands(formula)
print(f"grid {inst.rows} x {inst.cols}, dictionary {len(inst.dictionary)} words")
for diagonal in (True, False):
    part = solve_strands(inst, allow_diagonal=diagonal)
    print(f"diagonal={diagonal}:", pullback_1in3_strands(layout, inst, part, diagonal))
print("oracle:", oracle_1in3(formula))

board = FlowFreeInstance(3, 3, (("R", (0, 0), (2, 0)), ("G", (0, 1), (2, 2))))
words = reduce_flowfree(board)
part = solve_strands(words, allow_diagonal=False)
print(strands_ascii(words, part))
print(pullback_flowfree(board, words, part))
