"""Turn a small NAE-3SAT formula into a one-word Letter Boxed puzzle and back."""

from nythard.letterboxed import solve_search, verify_solution
from nythard.letterboxed_reductions import pullback_nae, reduce_nae3sat
from nythard.render import letterboxed_ascii
from nythard.sources import Nae3SatInstance, is_nae_satisfying

formula = Nae3SatInstance.of([("a", "b", "c"), ("a", "c", "d")])
out = reduce_nae3sat(formula)
print(letterboxed_ascii(out.puzzle))

solution = solve_search(out.puzzle, out.k)
print("puzzle solvable with", out.k, "word(s):", solution is not None)
print("certificate checks:", bool(verify_solution(out.puzzle, solution, out.k)))

assignment = pullback_nae(out, solution)
print("assignment:", assignment)
print("not-all-equal satisfied:", is_nae_satisfying(formula, assignment))
