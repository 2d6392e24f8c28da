"""Mode-locking analysis for piecewise-linear continuous maps.

Subpackages are plain modules:

    expr      tiny scalar expression language for map definitions
    symbolic  rotational words, partitions, Farey structure
    linalg    small dense matrix kit (cofactor adjugates, eigen pairs)
    maps      map families and the config format
    cycles    periodic solutions of symbol sequences
    shrink    locating and analysing shrinking points
    predict   leading-order asymptotics of nearby mode-locking regions
    scan      parameter-plane scans for admissible stable cycles
    cli       the modelock command line tool
"""

__version__ = "0.1.0"
