"""Cross-frame static-reflector tracking with a +/- N range-bin gate."""
from __future__ import annotations

import logging

from radvel.errors import OrderError
from radvel.models import PeakSet, ReflectorTrack, TrackerState, TrackPoint

logger = logging.getLogger(__name__)


def update_tracks(
    state: TrackerState,
    peaks: PeakSet,
    frame_index: int,
    gate_bins: int = 3,
    max_misses: int = 2,
) -> TrackerState:
    """Feed one frame's peaks into the tracker (state is updated in place).

    Peaks are visited strongest first. Each peak extends the active track
    with the nearest anchor within ``gate_bins`` (ties to the lower anchor)
    that has not already taken a peak this frame; a peak with no gated track
    opens a new one, and a peak whose gated tracks are all taken is dropped.
    Tracks missed for more than ``max_misses`` consecutive frames retire.

    Raises:
        OrderError: if ``frame_index`` does not increase.
    """
    if state.last_frame is not None and frame_index <= state.last_frame:
        raise OrderError(
            f"frame {frame_index} fed after frame {state.last_frame}; frames must increase"
        )

    anchors = {t.track_id: t.anchor_bin for t in state.active}
    claimed: set[int] = set()

    for peak in peaks:
        gated = [t for t in state.active if abs(peak.bin - anchors[t.track_id]) <= gate_bins]
        if not gated:
            track = ReflectorTrack(track_id=state.next_id)
            track.history.append(TrackPoint(frame_index, peak.bin, peak.magnitude))
            state.next_id += 1
            state.active.append(track)
            state.misses[track.track_id] = 0
            anchors[track.track_id] = peak.bin
            claimed.add(track.track_id)
            continue

        free = [t for t in gated if t.track_id not in claimed]
        if not free:
            logger.debug(f"frame {frame_index}: peak at bin {peak.bin} shadowed, dropped")
            continue

        best = min(
            free,
            key=lambda t: (abs(peak.bin - anchors[t.track_id]), anchors[t.track_id]),
        )
        best.history.append(TrackPoint(frame_index, peak.bin, peak.magnitude))
        claimed.add(best.track_id)

    survivors: list[ReflectorTrack] = []
    for track in state.active:
        if track.track_id in claimed:
            state.misses[track.track_id] = 0
            _prune_history(track, gate_bins)
            survivors.append(track)
            continue
        state.misses[track.track_id] = state.misses.get(track.track_id, 0) + 1
        if state.misses[track.track_id] > max_misses:
            state.retired.append(track)
            del state.misses[track.track_id]
        else:
            survivors.append(track)

    state.active = _resolve_collisions(survivors, state, gate_bins)
    state.last_frame = frame_index
    return state


def _prune_history(track: ReflectorTrack, gate_bins: int) -> None:
    """Drop the oldest entries until every bin sits within the gate of the anchor."""
    while len(track.history) > 1:
        anchor = track.anchor_bin
        if all(abs(p.bin - anchor) <= gate_bins for p in track.history):
            return
        track.history.pop(0)


def _resolve_collisions(
    tracks: list[ReflectorTrack], state: TrackerState, gate_bins: int
) -> list[ReflectorTrack]:
    """Keep anchors at least gate_bins + 1 apart; longer, then older, tracks win."""
    kept: list[ReflectorTrack] = []
    for track in sorted(tracks, key=lambda t: (-len(t), t.track_id)):
        if any(abs(track.anchor_bin - k.anchor_bin) <= gate_bins for k in kept):
            logger.warning(
                f"track {track.track_id} anchor {track.anchor_bin} collides with an "
                f"older track, dropped"
            )
            state.misses.pop(track.track_id, None)
            state.merged.append(track)
            continue
        kept.append(track)
    return sorted(kept, key=lambda t: t.track_id)


def select_static_tracks(
    state: TrackerState, min_frames: int = 3, gate_bins: int = 3
) -> list[ReflectorTrack]:
    """Tracks (active or retired) seen in at least ``min_frames`` frames.

    Tracks dropped in an anchor collision follow the same reflector as the
    track that kept the anchor, so they are never selected.
    """
    tracks = sorted(state.active + state.retired, key=lambda t: t.track_id)
    return [
        t
        for t in tracks
        if len(t) >= min_frames
        and all(abs(p.bin - t.anchor_bin) <= gate_bins for p in t.history)
    ]


class ReflectorTracker:
    """Incremental wrapper around :func:`update_tracks`.

    Feed one frame's peaks at a time via ``update()`` in increasing frame
    order; query confirmed static reflectors with ``static_tracks()``.
    """

    def __init__(self, gate_bins: int = 3, max_misses: int = 2) -> None:
        if gate_bins < 0:
            raise ValueError(f"gate_bins must be >= 0, got {gate_bins}")
        self.gate_bins = gate_bins
        self.max_misses = max_misses
        self.reset()

    @property
    def state(self) -> TrackerState:
        return self._state

    def update(self, peaks: PeakSet, frame_index: int) -> TrackerState:
        return update_tracks(
            self._state, peaks, frame_index, self.gate_bins, self.max_misses
        )

    def static_tracks(self, min_frames: int = 3) -> list[ReflectorTrack]:
        return select_static_tracks(self._state, min_frames, self.gate_bins)

    def reset(self) -> None:
        self._state = TrackerState()
