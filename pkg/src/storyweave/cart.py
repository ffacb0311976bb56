"""Direction forest: probing, recursive expansion, manual additions, selection.

Trees are immutable snapshots with a deterministic node-id allocator, so a
replayed command sequence reproduces identical trees. Provider-dependent
operations are split into a generation step (talks to the provider) and a
pure install step, which replay uses directly with recorded labels.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import prompting
from .errors import (
    AlreadyExpanded,
    AlreadyProbed,
    DepthCapExceeded,
    DuplicateSibling,
    MalformedDirections,
    SelectionCapExceeded,
    UnknownNode,
)

MODE_FULL = "full"
MODE_BASELINE = "baseline"

ORIGIN_GENERATED = "generated"
ORIGIN_MANUAL = "manual"


@dataclass(frozen=True)
class ExplorationPolicy:
    mode: str = MODE_FULL
    root_count: int = 8
    sub_count: int = 4
    max_depth: int | None = None

    @classmethod
    def full(cls, root_count: int = 8, sub_count: int = 4) -> "ExplorationPolicy":
        return cls(mode=MODE_FULL, root_count=root_count, sub_count=sub_count)

    @classmethod
    def baseline(cls, root_count: int = 8, sub_count: int = 4) -> "ExplorationPolicy":
        return cls(
            mode=MODE_BASELINE, root_count=root_count, sub_count=sub_count, max_depth=2
        )

    @property
    def selection_cap(self) -> int | None:
        return 1 if self.mode == MODE_BASELINE else None


@dataclass(frozen=True)
class DirectionNode:
    node_id: str
    label: str
    origin: str
    parent: str | None
    children: tuple[str, ...]
    depth: int
    selected: bool = False


@dataclass(frozen=True)
class DirectionTree:
    policy: ExplorationPolicy
    roots: tuple[str, ...] = ()
    nodes: tuple[tuple[str, DirectionNode], ...] = ()
    selection_order: tuple[str, ...] = ()
    next_id: int = 1

    def node(self, node_id: str) -> DirectionNode:
        for nid, node in self.nodes:
            if nid == node_id:
                return node
        raise UnknownNode(f"no node {node_id!r}")

    def has_node(self, node_id: str) -> bool:
        return any(nid == node_id for nid, _ in self.nodes)

    def as_map(self) -> dict[str, DirectionNode]:
        return dict(self.nodes)


def new_tree(policy: ExplorationPolicy | None = None) -> DirectionTree:
    return DirectionTree(policy=policy or ExplorationPolicy.full())


def _with_nodes(tree: DirectionTree, mapping: dict[str, DirectionNode], **kw) -> DirectionTree:
    return replace(tree, nodes=tuple(mapping.items()), **kw)


def path_of(tree: DirectionTree, node_id: str) -> str:
    """Qualified path 'root > … > node' joining ancestor labels."""
    labels: list[str] = []
    mapping = tree.as_map()
    current: str | None = node_id
    while current is not None:
        node = mapping.get(current)
        if node is None:
            raise UnknownNode(f"no node {current!r}")
        labels.append(node.label)
        current = node.parent
    return " > ".join(reversed(labels))


def qualified_paths(tree: DirectionTree) -> list[str]:
    return [path_of(tree, nid) for nid in tree.selection_order]


def _sibling_labels(tree: DirectionTree, parent: str | None) -> set[str]:
    mapping = tree.as_map()
    ids = tree.roots if parent is None else mapping[parent].children
    return {mapping[nid].label.casefold() for nid in ids}


def _disambiguate(labels: list[str], taken: set[str]) -> list[str]:
    """Suffix case-insensitive duplicates: second 'theme' becomes 'theme (2)'."""
    out: list[str] = []
    seen = set(taken)
    for label in labels:
        candidate = label
        n = 1
        while candidate.casefold() in seen:
            n += 1
            candidate = f"{label} ({n})"
        seen.add(candidate.casefold())
        out.append(candidate)
    return out


def _has_duplicates(labels: list[str], taken: set[str]) -> bool:
    seen = set(taken)
    for label in labels:
        if label.casefold() in seen:
            return True
        seen.add(label.casefold())
    return False


def install_roots(tree: DirectionTree, labels: list[str]) -> DirectionTree:
    """Pure step: replace the forest roots with generated nodes (replay-safe)."""
    labels = [prompting.check_label(x) for x in _disambiguate(list(labels), set())]
    mapping: dict[str, DirectionNode] = {}
    roots: list[str] = []
    next_id = tree.next_id
    for label in labels:
        nid = f"d{next_id}"
        next_id += 1
        mapping[nid] = DirectionNode(
            node_id=nid,
            label=label,
            origin=ORIGIN_GENERATED,
            parent=None,
            children=(),
            depth=1,
        )
        roots.append(nid)
    return DirectionTree(
        policy=tree.policy,
        roots=tuple(roots),
        nodes=tuple(mapping.items()),
        selection_order=(),
        next_id=next_id,
    )


def install_children(tree: DirectionTree, node_id: str, labels: list[str]) -> DirectionTree:
    """Pure step: append generated children under a node (replay-safe)."""
    mapping = tree.as_map()
    if node_id not in mapping:
        raise UnknownNode(f"no node {node_id!r}")
    parent = mapping[node_id]
    labels = [
        prompting.check_label(x)
        for x in _disambiguate(list(labels), _sibling_labels(tree, node_id))
    ]
    next_id = tree.next_id
    child_ids: list[str] = []
    for label in labels:
        nid = f"d{next_id}"
        next_id += 1
        mapping[nid] = DirectionNode(
            node_id=nid,
            label=label,
            origin=ORIGIN_GENERATED,
            parent=node_id,
            children=(),
            depth=parent.depth + 1,
        )
        child_ids.append(nid)
    mapping[node_id] = replace(parent, children=parent.children + tuple(child_ids))
    return _with_nodes(tree, mapping, next_id=next_id)


def _generate_labels(
    tree: DirectionTree,
    kind: str,
    selected_part: str,
    entire_story: str,
    provider,
    directions: list[str],
    count: int,
    taken: set[str],
) -> list[str]:
    """Call the provider; one retry on parse failure or duplicate labels.

    Labels still duplicated after the retry are returned as-is; the install
    step suffix-disambiguates them.
    """
    last_error: MalformedDirections | None = None
    last_labels: list[str] | None = None
    for _ in range(2):
        prompt = prompting.compile(kind, entire_story, selected_part, directions, count)
        raw = provider.generate(prompt).text
        try:
            labels = list(prompting.parse_directions(raw, count).labels)
        except MalformedDirections as exc:
            last_error = exc
            continue
        if not _has_duplicates(labels, taken):
            return labels
        last_labels = labels
    if last_labels is not None:
        return last_labels
    assert last_error is not None
    raise last_error


def probe(
    tree: DirectionTree,
    selected_part: str,
    entire_story: str,
    provider,
    allow_reprobe: bool = False,
) -> DirectionTree:
    if not selected_part:
        raise ValueError("selected_part must be non-empty")
    if tree.roots and not allow_reprobe:
        raise AlreadyProbed("tree already has roots; pass allow_reprobe to replace")
    labels = _generate_labels(
        tree,
        prompting.KIND_ROOT,
        selected_part,
        entire_story,
        provider,
        [],
        tree.policy.root_count,
        set(),
    )
    return install_roots(tree, labels)


def expand(
    tree: DirectionTree,
    node_id: str,
    selected_part: str,
    entire_story: str,
    provider,
) -> DirectionTree:
    node = tree.node(node_id)
    mapping = tree.as_map()
    if any(mapping[c].origin == ORIGIN_GENERATED for c in node.children):
        raise AlreadyExpanded(f"node {node_id!r} already has generated children")
    max_depth = tree.policy.max_depth
    if max_depth is not None and node.depth + 1 > max_depth:
        raise DepthCapExceeded(
            f"expansion to depth {node.depth + 1} exceeds the cap of {max_depth}"
        )
    labels = _generate_labels(
        tree,
        prompting.KIND_SUB,
        selected_part,
        entire_story,
        provider,
        [path_of(tree, node_id)],
        tree.policy.sub_count,
        _sibling_labels(tree, node_id),
    )
    return install_children(tree, node_id, labels)


def add_manual(tree: DirectionTree, parent: str | None, label: str) -> DirectionTree:
    label = prompting.check_label(label)
    if parent is not None and not tree.has_node(parent):
        raise UnknownNode(f"no node {parent!r}")
    if label.casefold() in _sibling_labels(tree, parent):
        raise DuplicateSibling(f"sibling already labeled {label!r}")
    mapping = tree.as_map()
    nid = f"d{tree.next_id}"
    depth = 1 if parent is None else mapping[parent].depth + 1
    if tree.policy.max_depth is not None and depth > tree.policy.max_depth:
        raise DepthCapExceeded(
            f"manual node at depth {depth} exceeds the cap of {tree.policy.max_depth}"
        )
    mapping[nid] = DirectionNode(
        node_id=nid,
        label=label,
        origin=ORIGIN_MANUAL,
        parent=parent,
        children=(),
        depth=depth,
    )
    roots = tree.roots
    if parent is None:
        roots = roots + (nid,)
    else:
        mapping[parent] = replace(
            mapping[parent], children=mapping[parent].children + (nid,)
        )
    return _with_nodes(tree, mapping, roots=roots, next_id=tree.next_id + 1)


def set_selected(tree: DirectionTree, node_id: str, on: bool) -> DirectionTree:
    node = tree.node(node_id)
    if node.selected == on:
        return tree  # idempotent no-op
    if on:
        cap = tree.policy.selection_cap
        if cap is not None and len(tree.selection_order) >= cap:
            raise SelectionCapExceeded(
                f"policy allows at most {cap} selected direction(s)"
            )
        order = tree.selection_order + (node_id,)
    else:
        order = tuple(n for n in tree.selection_order if n != node_id)
    mapping = tree.as_map()
    mapping[node_id] = replace(node, selected=on)
    return _with_nodes(tree, mapping, selection_order=order)


# --- serialization ----------------------------------------------------------

def policy_to_dict(policy: ExplorationPolicy) -> dict:
    return {
        "mode": policy.mode,
        "root_count": policy.root_count,
        "sub_count": policy.sub_count,
        "max_depth": policy.max_depth,
    }


def policy_from_dict(d: dict) -> ExplorationPolicy:
    return ExplorationPolicy(
        mode=d.get("mode", MODE_FULL),
        root_count=d.get("root_count", 8),
        sub_count=d.get("sub_count", 4),
        max_depth=d.get("max_depth"),
    )


def tree_to_dict(tree: DirectionTree) -> dict:
    return {
        "policy": policy_to_dict(tree.policy),
        "roots": list(tree.roots),
        "selection_order": list(tree.selection_order),
        "next_id": tree.next_id,
        "nodes": [
            {
                "node_id": n.node_id,
                "label": n.label,
                "origin": n.origin,
                "parent": n.parent,
                "children": list(n.children),
                "depth": n.depth,
                "selected": n.selected,
            }
            for _, n in tree.nodes
        ],
    }


def tree_from_dict(d: dict) -> DirectionTree:
    nodes = tuple(
        (
            n["node_id"],
            DirectionNode(
                node_id=n["node_id"],
                label=n["label"],
                origin=n["origin"],
                parent=n["parent"],
                children=tuple(n["children"]),
                depth=n["depth"],
                selected=n["selected"],
            ),
        )
        for n in d["nodes"]
    )
    return DirectionTree(
        policy=policy_from_dict(d["policy"]),
        roots=tuple(d["roots"]),
        selection_order=tuple(d["selection_order"]),
        next_id=d["next_id"],
        nodes=nodes,
    )
