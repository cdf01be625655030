from src.core.exceptions import DomainError
from src.core.length import MetricView

CloudPoint = tuple[int, int]


class DisjointCloudSpace:
    """
    Disjoint union of discrete clouds D_1, ..., D_m where D_j has j points

    Point (j, i) is the i-th point of D_j and (j, 0) is its center. Within a
    cloud the metric is discrete; across clouds it is
    d(z, y) = d_j(z, center_j) + |j - k| + d_k(y, center_k).
    The space is proper, yet closed 1-balls around the centers keep growing
    with j, so it has no bounded geometry.
    """

    def __init__(self, clouds: int):
        if clouds < 1:
            raise DomainError("Need at least one cloud", details={"clouds": clouds})
        self.clouds = clouds

    def points(self) -> list[CloudPoint]:
        return [(j, i) for j in range(1, self.clouds + 1) for i in range(j)]

    def center(self, j: int) -> CloudPoint:
        return (j, 0)

    @staticmethod
    def distance(z: CloudPoint, y: CloudPoint) -> int:
        if z == y:
            return 0
        if z[0] == y[0]:
            return 1
        return int(z[1] != 0) + abs(z[0] - y[0]) + int(y[1] != 0)

    def metric(self) -> MetricView:
        return MetricView(
            evaluator=self.distance,
            name=f"disjoint-clouds[{self.clouds}]",
            source="DisjointCloudSpace"
        )
