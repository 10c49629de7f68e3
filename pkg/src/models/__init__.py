from .group import FiniteGroup, Subgroup
from .permutation import Permutation, PermGroup, Subcoset
from .abelian import AbelianDecomposition, HRMatrix
from .wreath import WreathTower, WreathElement, Holomorph
from .coloring import Coloring, ColorIsoInstance
from .bilinear import BilinearMap, GfGroup
from .graph import Graph, GadgetGraph
