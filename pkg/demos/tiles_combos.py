"""Tiles: parity decides solvability, and the trail test decides teleport-free play."""

from nythard.render import tiles_ascii
from nythard.tiles import make_tiles, no_teleport_solvable, solve_greedy, verify_moves

for tiles in ([{"a", "b"}, {"a"}, {"b"}], [{"a"}, {"a", "b"}, {"b"}], [{"a"}, {"a"}, {"b"}, {"b"}], [{"f"}]):
    inst = make_tiles(tiles)
    moves = solve_greedy(inst)
    print(tiles_ascii(inst, moves), end="")
    if moves is not None:
        print("  report:", verify_moves(inst, moves))
        print("  no teleports needed:", no_teleport_solvable(inst)[0])
    else:
        print("  unsolvable")
    print()
