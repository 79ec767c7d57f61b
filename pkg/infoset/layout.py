"""
Раскладка координат: кортеж функций f_i : M^{n_i} → [0,1] как точка [0,1]^D.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

from semantics.models import grid, grid_rank


class LayoutError(ValueError):
    """Несовместимые раскладки"""


@dataclass(frozen=True)
class CoordLayout:
    """Домен m и арности компонент; в модальном режиме каждая компонента занимает m координат"""
    domain_size: int
    arities: Tuple[int, ...]
    modal: bool = False

    def __post_init__(self):
        if self.domain_size < 1:
            raise LayoutError("domain size must be at least 1")
        if any(a < 0 for a in self.arities):
            raise LayoutError("negative arity in layout")
        if self.modal and any(a != 0 for a in self.arities):
            raise LayoutError("modal components are sentences")

    @property
    def components(self) -> int:
        return len(self.arities)

    def width_of(self, index: int) -> int:
        if self.modal:
            return self.domain_size
        return self.domain_size ** self.arities[index]

    @cached_property
    def widths(self) -> Tuple[int, ...]:
        return tuple(self.width_of(i) for i in range(len(self.arities)))

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out, total = [], 0
        for width in self.widths:
            out.append(total)
            total += width
        return tuple(out)

    @property
    def width(self) -> int:
        """Суммарная ширина D"""
        return sum(self.widths)

    def block(self, index: int) -> range:
        start = self.offsets[index]
        return range(start, start + self.widths[index])

    def grid(self, index: int) -> List[Tuple[int, ...]]:
        """Точки сетки компоненты (миры в модальном режиме)"""
        if self.modal:
            return [(w,) for w in range(self.domain_size)]
        return grid(self.domain_size, self.arities[index])

    def coordinate(self, index: int, point: Sequence[int]) -> int:
        if self.modal:
            return self.offsets[index] + point[0]
        return self.offsets[index] + grid_rank(point, self.domain_size)

    def check_guard(self, max_width: int) -> None:
        if self.width > max_width:
            raise LayoutError(f"total width {self.width} exceeds the size guard {max_width}")

    # === ПРЕОБРАЗОВАНИЯ ===

    def permuted(self, perm: Sequence[int]) -> "CoordLayout":
        """perm[j]: старый номер компоненты на новом месте j"""
        if sorted(perm) != list(range(len(self.arities))):
            raise LayoutError(f"{list(perm)} is not a permutation of {len(self.arities)} components")
        return CoordLayout(self.domain_size, tuple(self.arities[i] for i in perm), self.modal)

    def coordinate_order(self, perm: Sequence[int]) -> List[int]:
        """Для каждой новой координаты: её старый номер"""
        order = []
        for old in perm:
            order.extend(self.block(old))
        return order

    def extended(self, arities: Sequence[int]) -> "CoordLayout":
        return CoordLayout(self.domain_size, self.arities + tuple(arities), self.modal)

    def prefix(self, keep: int) -> "CoordLayout":
        return CoordLayout(self.domain_size, self.arities[:keep], self.modal)

    def relabeled(self, domain_size: int) -> "CoordLayout":
        """Та же раскладка на другом домене (только для предложений)"""
        if any(a != 0 for a in self.arities) or self.modal:
            raise LayoutError("only sentence layouts can move between domains")
        return CoordLayout(domain_size, self.arities, self.modal)
