"""Print the DEFAULT_MODULI table used by wittiso.perfect_algebra."""
from wittiso.perfect_algebra import smallest_irreducible

if __name__ == "__main__":
    for p in (2, 3, 5, 7, 11, 13):
        for e in (2, 3, 4):
            print(f"    ({p}, {e}): {smallest_irreducible(p, e)},")
