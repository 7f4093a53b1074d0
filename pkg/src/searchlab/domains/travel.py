"""Simplified air-travel domain: planes fly, passengers board and debark.

Flying between cities costs thousands of units while boarding and
debarking cost 1, so the cost spectrum is extreme (min/max ratio around
1/10000). The passenger-shuffling subspace around any plane placement is
a flat cost plateau, which is exactly what traps cost-ordered search.

A state is (plane locations, passenger positions); a passenger position
is either a city index or ``n_cities + plane_index`` when aboard.
Actions are edge labels named ``board(p1,r2)``, ``debark(p1,r2)`` and
``fly(r1,c0,c1)``. Board requires co-location, debark requires being
aboard, fly requires a city-graph edge; the generator only emits legal
moves, in canonical order: boards, debarks, flys, each sorted by entity
then city.
"""

from __future__ import annotations

import heapq
from typing import NamedTuple

from ..engine import EdgeLabel
from ..evaluators import HeuristicBundle
from .base import ProblemModel

BOARD_COST = 1
DEBARK_COST = 1


class TravelProblem(ProblemModel):
    def __init__(self, n_cities: int, flights: dict[tuple[int, int], int],
                 planes: tuple[int, ...], passengers: tuple[tuple[int, int], ...],
                 name: str):
        self.n_cities = n_cities
        self.flights = dict(flights)
        self.planes = tuple(planes)
        self.passengers = tuple(passengers)
        self.name = name

        adjacency: dict[int, list[tuple[int, int]]] = {c: [] for c in range(n_cities)}
        for (a, b), cost in flights.items():
            adjacency[a].append((b, cost))
            adjacency[b].append((a, cost))
        self.adjacency = {c: sorted(nbrs) for c, nbrs in adjacency.items()}

        self._sp_cost, self._hops_cheap = self._cheapest_routes()
        self._min_hops = self._fewest_hops()
        self.heuristics = HeuristicBundle(
            h_c=self._h_c, h_s=self._h_s, h_s_hat=self._h_s_hat,
            h_c_admissible=self._h_c_admissible)

    # -- city-graph route tables ------------------------------------------

    def _cheapest_routes(self):
        """Per city pair: cheapest flight cost, and that route's hop count."""
        n = self.n_cities
        cost = [[None] * n for _ in range(n)]
        hops = [[None] * n for _ in range(n)]
        for src in range(n):
            dist = {src: (0, 0)}
            heap = [(0, 0, src)]
            while heap:
                d, h, c = heapq.heappop(heap)
                if dist[c] < (d, h):
                    continue
                for nbr, w in self.adjacency[c]:
                    cand = (d + w, h + 1)
                    if nbr not in dist or cand < dist[nbr]:
                        dist[nbr] = cand
                        heapq.heappush(heap, (d + w, h + 1, nbr))
            for c, (d, h) in dist.items():
                cost[src][c] = d
                hops[src][c] = h
        return cost, hops

    def _fewest_hops(self):
        n = self.n_cities
        table = [[None] * n for _ in range(n)]
        for src in range(n):
            table[src][src] = 0
            frontier = [src]
            depth = 0
            while frontier:
                depth += 1
                nxt = []
                for c in frontier:
                    for nbr, _ in self.adjacency[c]:
                        if table[src][nbr] is None:
                            table[src][nbr] = depth
                            nxt.append(nbr)
                frontier = nxt
        return table

    # -- model contract -----------------------------------------------------

    def initial_state(self):
        return self.planes, tuple(origin for origin, _ in self.passengers)

    def is_goal(self, state) -> bool:
        positions = state[1]
        return all(pos == dest for pos, (_, dest) in zip(positions, self.passengers))

    def children(self, state):
        return travel_children(state, self)

    def edge_costs(self) -> frozenset[int]:
        return frozenset({BOARD_COST, DEBARK_COST, *self.flights.values()})

    def describe(self) -> str:
        return self.name

    # -- heuristics -----------------------------------------------------------

    def _journeys(self, state):
        """(board+debark actions still needed, carrier city) per unfinished passenger."""
        planes, positions = state
        out = []
        for pos, (_, dest) in zip(positions, self.passengers):
            if pos >= self.n_cities:
                out.append((1, planes[pos - self.n_cities], dest))
            elif pos != dest:
                out.append((2, pos, dest))
        return out

    def _h_c_admissible(self, state) -> int:
        """Lower bound: all boards/debarks plus the single hardest flight path.

        Distinct passengers cannot share board or debark actions, and the
        total flight cost is at least any one passenger's cheapest route,
        so the sum plus the max never exceeds true cost-to-go. The bound
        is consistent: per edge it changes by at most that edge's cost.
        """
        journeys = self._journeys(state)
        if not journeys:
            return 0
        sp = self._sp_cost
        return (sum(bd for bd, _, _ in journeys)
                + max(sp[origin][dest] for _, origin, dest in journeys))

    def _per_origin(self, journeys, table):
        # Satisficing flight estimate: one route per distinct origin city,
        # taking the hardest passenger there. Overestimates shared rides.
        worst: dict[int, int] = {}
        for _, origin, dest in journeys:
            v = table[origin][dest]
            if v > worst.get(origin, -1):
                worst[origin] = v
        return sum(worst.values())

    def _h_c(self, state) -> int:
        journeys = self._journeys(state)
        return (sum(bd for bd, _, _ in journeys)
                + self._per_origin(journeys, self._sp_cost))

    def _h_s(self, state) -> int:
        journeys = self._journeys(state)
        return (sum(bd for bd, _, _ in journeys)
                + self._per_origin(journeys, self._min_hops))

    def _h_s_hat(self, state) -> int:
        journeys = self._journeys(state)
        return (sum(bd for bd, _, _ in journeys)
                + self._per_origin(journeys, self._hops_cheap))


class HValues(NamedTuple):
    h_c: int
    h_s: int
    h_s_hat: int
    h_c_admissible: int


def travel_heuristics(state, instance: TravelProblem) -> HValues:
    """All four heuristic values of one state."""
    return HValues(
        h_c=instance._h_c(state),
        h_s=instance._h_s(state),
        h_s_hat=instance._h_s_hat(state),
        h_c_admissible=instance._h_c_admissible(state),
    )


def travel_children(state, instance: TravelProblem):
    """Legal moves in canonical order: boards, debarks, flys."""
    planes, positions = state
    n = instance.n_cities
    edges = []

    for p, pos in enumerate(positions):
        if pos < n:
            for q, city in enumerate(planes):
                if city == pos:
                    new_pos = positions[:p] + (n + q,) + positions[p + 1:]
                    edges.append((EdgeLabel(f"board(p{p + 1},r{q + 1})", BOARD_COST),
                                  (planes, new_pos)))

    for p, pos in enumerate(positions):
        if pos >= n:
            q = pos - n
            new_pos = positions[:p] + (planes[q],) + positions[p + 1:]
            edges.append((EdgeLabel(f"debark(p{p + 1},r{q + 1})", DEBARK_COST),
                          (planes, new_pos)))

    for q, city in enumerate(planes):
        for nbr, cost in instance.adjacency[city]:
            new_planes = planes[:q] + (nbr,) + planes[q + 1:]
            edges.append((EdgeLabel(f"fly(r{q + 1},c{city},c{nbr})", cost),
                          (new_planes, positions)))

    return edges


CENTER = 0
CORNERS = (1, 2, 3, 4)


def make_rendezvous(k: int, planes: int = 4, origins: tuple[int, int] = (1, 3),
                    diagonal_cost: int = 7000,
                    exterior_cost: int = 10000) -> TravelProblem:
    """Five-city square: center hub plus four corners.

    Diagonal edges (corner to center) cost ``diagonal_cost``, exterior
    edges around the square cost ``exterior_cost``. One plane starts on
    each corner; k passengers start at each of two (by default opposite)
    corners and all want the center. With 4 planes the reachable state
    count is exactly 5^4 * 9^(2k).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 1 <= planes <= len(CORNERS):
        raise ValueError("planes must lie in [1, 4]")
    if len(origins) != 2 or not all(o in CORNERS for o in origins):
        raise ValueError("origins must be two corner cities (1..4)")
    flights = {(CENTER, c): diagonal_cost for c in CORNERS}
    ring = list(CORNERS) + [CORNERS[0]]
    for a, b in zip(ring, ring[1:]):
        flights[(min(a, b), max(a, b))] = exterior_cost
    passenger_list = tuple((origins[0], CENTER) for _ in range(k)) + tuple(
        (origins[1], CENTER) for _ in range(k))
    return TravelProblem(
        n_cities=5,
        flights=flights,
        planes=CORNERS[:planes],
        passengers=passenger_list,
        name=(f"travel-rendezvous(k={k},planes={planes},origins={origins},"
              f"diagonal={diagonal_cost},exterior={exterior_cost})"),
    )


def make_swap(n_cities: int, fly_cost: int = 10000) -> TravelProblem:
    """Chain of cities; swap the two passengers sitting at its endpoints.

    A plane starts on each side. Neither extra plane helps: the cheapest
    and the smallest plans coincide, yet the evaluation function still
    decides how fast they are found.
    """
    if n_cities < 2:
        raise ValueError("n_cities must be >= 2")
    flights = {(c, c + 1): fly_cost for c in range(n_cities - 1)}
    last = n_cities - 1
    return TravelProblem(
        n_cities=n_cities,
        flights=flights,
        planes=(0, last),
        passengers=((0, last), (last, 0)),
        name=f"travel-swap(n_cities={n_cities},fly={fly_cost})",
    )
