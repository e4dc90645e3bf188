"""Curation engine: sample lifecycle, review batches, event sourcing, viz feeds.

Every mutation is computed once, committed to the append-only log, and then
applied through the same payload-driven ``_apply`` used during replay, so a
reload (snapshot + replay) reconstructs live state exactly.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import autofix as autofix_mod
from . import metrics
from .config import COMPONENTS, ThresholdConfig
from .corpus import CorpusState
from .embeddings import EmbeddingStore, sentence_vector
from .events import SNAPSHOT_EVERY, EventLog
from .metrics import QualityReport, StateError, flag
from .proxy import TrainingError, train_proxy
from .robustify import tf_repair
from .samples import Sample, State, ValidationError
from .text import ngrams, tokenize

BATCH_SIZE = 50
NEIGHBOR_CAP = 300
SPLIT_RATIOS = (("train", 0.7), ("dev", 0.1), ("test", 0.2))


class NotFoundError(KeyError):
    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class TransitionError(RuntimeError):
    pass


@dataclass
class Batch:
    id: int
    sample_ids: list[str] = field(default_factory=list)
    decisions: dict[str, str] = field(default_factory=dict)
    failure_notes: dict[str, str] = field(default_factory=dict)
    analyst: str | None = None
    closed: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "sample_ids": list(self.sample_ids),
            "decisions": dict(self.decisions),
            "failure_notes": dict(self.failure_notes),
            "analyst": self.analyst,
            "closed": self.closed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Batch":
        return cls(
            id=d["id"],
            sample_ids=list(d["sample_ids"]),
            decisions=dict(d["decisions"]),
            failure_notes=dict(d["failure_notes"]),
            analyst=d.get("analyst"),
            closed=d["closed"],
        )


def _new_worker() -> dict:
    return {
        "submitted": 0,
        "reviewed": 0,
        "distribution": {"accept": 0, "reject": 0, "repair": 0},
        "history": [],
    }


class CurationService:
    def __init__(
        self,
        data_dir,
        store: EmbeddingStore,
        config: ThresholdConfig | None = None,
        seed: int = 0,
    ):
        self.store = store
        self.config = config or ThresholdConfig()
        self.seed = seed
        self.log = EventLog(data_dir)
        self.rng = np.random.default_rng(seed)
        self.seq = 0
        self.samples: dict[str, Sample] = {}
        self.reports: dict[str, QualityReport] = {}
        self.batches: dict[int, Batch] = {}
        self.workers: dict[str, dict] = {}
        self.accepted: list[dict] = []  # {sample, report} acceptance records in order
        self.split_stack: list[dict[str, str]] = []
        self.corpus = CorpusState(store)
        self._proxy_cache: tuple[int, object] | None = None
        self._load()

    # -- persistence ------------------------------------------------------

    def _load(self) -> None:
        snap = self.log.latest_snapshot()
        after = 0
        if snap is not None:
            after, state = snap
            self._restore_state(state)
            self.seq = after
        for event in self.log.read_events(after_seq=after):
            self._apply(event)
            self.seq = event["seq"]

    def _state_dict(self) -> dict:
        return {
            "samples": {k: s.to_dict() for k, s in self.samples.items()},
            "reports": {k: r.to_dict() for k, r in self.reports.items()},
            "batches": [b.to_dict() for b in sorted(self.batches.values(), key=lambda b: b.id)],
            "workers": {k: dict(v, distribution=dict(v["distribution"]), history=[list(h) for h in v["history"]]) for k, v in self.workers.items()},
            "accepted": [
                {"sample": r["sample"], "report": r["report"]} for r in self.accepted
            ],
            "split_stack": [dict(a) for a in self.split_stack],
            "config": self.config.to_dict(),
        }

    def _restore_state(self, state: dict) -> None:
        self.samples = {k: Sample.from_dict(d) for k, d in state["samples"].items()}
        self.reports = {k: QualityReport.from_dict(d) for k, d in state["reports"].items()}
        self.batches = {b["id"]: Batch.from_dict(b) for b in state["batches"]}
        self.workers = {
            k: {
                "submitted": v["submitted"],
                "reviewed": v["reviewed"],
                "distribution": dict(v["distribution"]),
                "history": [list(h) for h in v["history"]],
            }
            for k, v in state["workers"].items()
        }
        self.accepted = [
            {"sample": r["sample"], "report": r["report"]} for r in state["accepted"]
        ]
        self.split_stack = [dict(a) for a in state["split_stack"]]
        self.config = ThresholdConfig.from_dict(state["config"])
        self._rebuild_corpus()

    def _rebuild_corpus(self) -> None:
        corpus = CorpusState(self.store)
        for record in self.accepted:
            sample = Sample.from_dict(record["sample"])
            report = QualityReport.from_dict(record["report"])
            corpus.accept(
                sample, report.artifact_vector(), report.raw_vector(), report.overall
            )
        # current split assignment is authoritative, not the acceptance-time one
        for sid in corpus.order:
            if sid in self.samples:
                corpus.set_split(sid, self.samples[sid].split)
        self.corpus = corpus
        self._proxy_cache = None

    def _commit(self, action: str, actor: str, sample_id: str | None, payload: dict) -> dict:
        event = {
            "seq": self.seq + 1,
            "ts": time.time(),
            "actor": actor,
            "action": action,
            "sample_id": sample_id,
            "payload": payload,
        }
        self.log.append(event)
        self._apply(event)
        self.seq = event["seq"]
        if self.seq % SNAPSHOT_EVERY == 0:
            self.log.write_snapshot(self.seq, self._state_dict())
        return event

    # -- event application (replay-safe, payload-driven) ------------------

    def _apply(self, event: dict) -> None:
        action = event["action"]
        payload = event["payload"]
        if action == "create":
            sample = Sample.from_dict(payload["sample"])
            self.samples[sample.id] = sample
            if sample.author and sample.author not in self.workers:
                self.workers[sample.author] = _new_worker()
        elif action == "evaluate":
            sid = payload["id"]
            self.reports[sid] = QualityReport.from_dict(payload["report"])
            self.samples[sid].state = State.EVALUATED
        elif action == "revise":
            sid = payload["id"]
            self.samples[sid] = self.samples[sid].with_hypothesis(
                payload["text"], "manual", timestamp=event["ts"]
            )
            self.samples[sid].state = State.DRAFT
        elif action == "autofix":
            sid = payload["id"]
            sample = self.samples[sid]
            for text in payload["versions"]:
                sample = sample.with_hypothesis(text, "autofix", timestamp=event["ts"])
            sample.state = State.DRAFT if payload["versions"] else State.EVALUATED
            self.samples[sid] = sample
            if payload.get("report") is not None:
                self.reports[sid] = QualityReport.from_dict(payload["report"])
        elif action == "submit":
            sid = payload["id"]
            if payload["opens_new"]:
                self.batches[payload["batch_id"]] = Batch(id=payload["batch_id"])
            self.batches[payload["batch_id"]].sample_ids.append(sid)
            self.samples[sid].state = State.PENDING
            author = self.samples[sid].author
            if author:
                w = self.workers.setdefault(author, _new_worker())
                w["submitted"] += 1
                w["history"].append(
                    [w["submitted"], self.reports[sid].overall]
                )
        elif action == "decide":
            self._apply_decide(payload)
        elif action == "undo_decision":
            self._apply_undo_decision(payload)
        elif action == "split_randomize":
            current = {
                sid: self.samples[sid].split for sid in self.corpus.order
            }
            self.split_stack.append(current)
            self._apply_assignment(payload["assignment"])
        elif action == "split_undo":
            assignment = self.split_stack.pop()
            self._apply_assignment(assignment)
        elif action == "split_save":
            self.split_stack = []
        elif action == "config_put":
            self.config = ThresholdConfig.from_dict(payload["config"])
        else:
            raise ValueError(f"unknown event action {action!r}")

    def _apply_assignment(self, assignment: dict[str, str]) -> None:
        for sid, split in assignment.items():
            if sid in self.samples:
                self.samples[sid].split = split
            if sid in self.corpus.samples:
                self.corpus.set_split(sid, split)

    def _apply_decide(self, payload: dict) -> None:
        batch = self.batches[payload["batch_id"]]
        sid = payload["id"]
        action = payload["action"]
        outcome = payload["outcome"]
        batch.analyst = payload["analyst"]
        if outcome["state"] == "Pending":  # repair failure: no decision recorded
            batch.failure_notes[sid] = outcome["failure_note"]
            return
        batch.decisions[sid] = action
        author = self.samples[sid].author
        if author:
            w = self.workers.setdefault(author, _new_worker())
            w["reviewed"] += 1
            key = {"accept": "accept", "reject": "reject", "repair_then_accept": "repair"}[action]
            w["distribution"][key] += 1
        if outcome["state"] == "Rejected":
            self.samples[sid].state = State.REJECTED
        else:
            if "repaired_sample" in outcome:
                self.samples[sid] = Sample.from_dict(outcome["repaired_sample"])
            sample = self.samples[sid]
            sample.state = State(outcome["state"])
            report = QualityReport.from_dict(outcome["report"])
            self.reports[sid] = report
            self.accepted.append(
                {"sample": sample.to_dict(), "report": outcome["report"]}
            )
            self.corpus.accept(
                sample, report.artifact_vector(), report.raw_vector(), report.overall
            )
            self._proxy_cache = None
        if all(s in batch.decisions for s in batch.sample_ids):
            batch.closed = True

    def _apply_undo_decision(self, payload: dict) -> None:
        batch = self.batches[payload["batch_id"]]
        sid = payload["id"]
        prior_action = batch.decisions.pop(sid)
        restored = Sample.from_dict(payload["prior_sample"])
        restored.state = State.PENDING
        self.samples[sid] = restored
        author = restored.author
        if author and author in self.workers:
            w = self.workers[author]
            w["reviewed"] -= 1
            key = {"accept": "accept", "reject": "reject", "repair_then_accept": "repair"}[prior_action]
            w["distribution"][key] -= 1
        if payload["was_merged"]:
            self.accepted = [r for r in self.accepted if r["sample"]["id"] != sid]
            self._rebuild_corpus()

    # -- public operations -------------------------------------------------

    def _get_sample(self, sample_id: str) -> Sample:
        if sample_id not in self.samples:
            raise NotFoundError(f"unknown sample {sample_id!r}")
        return self.samples[sample_id]

    def create_sample(
        self,
        premise: str,
        hypothesis: str,
        label: str,
        split: str = "train",
        author: str = "",
        sample_id: str | None = None,
    ) -> Sample:
        """Create a draft, or revise an existing draft/evaluated sample."""
        if sample_id is not None and sample_id in self.samples:
            existing = self.samples[sample_id]
            if existing.state not in (State.DRAFT, State.EVALUATED):
                raise TransitionError(
                    f"sample {sample_id} is {existing.state.value}; only Draft/Evaluated can be revised"
                )
            self._commit("revise", author or existing.author, sample_id, {"id": sample_id, "text": hypothesis})
            return self.samples[sample_id]
        sid = sample_id or f"s{self.seq + 1:06d}"
        if sid in self.samples:
            raise ValidationError([{"field": "id", "message": f"duplicate id {sid}"}])
        sample = Sample(
            id=sid, premise=premise, hypothesis=hypothesis, label=label,
            split=split, author=author,
        )
        errors = [e for e in sample.validate() if e["field"] in ("label", "split")]
        if errors:
            raise ValidationError(errors)
        self._commit("create", author, sid, {"sample": sample.to_dict()})
        return self.samples[sid]

    def evaluate_sample(self, sample_id: str) -> QualityReport:
        sample = self._get_sample(sample_id)
        if sample.state not in (State.DRAFT, State.EVALUATED):
            raise TransitionError(
                f"cannot evaluate from state {sample.state.value}"
            )
        report = metrics.evaluate(sample, self.corpus, self.config)
        self._commit("evaluate", sample.author, sample_id, {"id": sample_id, "report": report.to_dict()})
        return report

    def autofix_sample(self, sample_id: str, target: str = "yellow", max_iter: int = 10):
        sample = self._get_sample(sample_id)
        if sample.state != State.EVALUATED:
            raise TransitionError("autofix requires an evaluated sample")
        trace = autofix_mod.autofix(sample, self.corpus, self.config, target=target, max_iter=max_iter)
        versions = [it.hypothesis for it in trace.iterations]
        final_report = (
            trace.iterations[-1].after if trace.iterations else metrics.evaluate(sample, self.corpus, self.config)
        )
        self._commit(
            "autofix",
            sample.author,
            sample_id,
            {
                "id": sample_id,
                "versions": versions,
                "report": final_report.to_dict(),
                "status": trace.status,
            },
        )
        return trace

    def submit(self, sample_id: str) -> dict:
        sample = self._get_sample(sample_id)
        if sample.state != State.EVALUATED or sample_id not in self.reports:
            raise TransitionError("submit requires an evaluated sample with a stored report")
        newest = max(self.batches.values(), key=lambda b: b.id, default=None)
        if newest is None or len(newest.sample_ids) >= BATCH_SIZE or newest.closed:
            batch_id = (newest.id + 1) if newest else 1
            opens_new = True
        else:
            batch_id = newest.id
            opens_new = False
        self._commit(
            "submit",
            sample.author,
            sample_id,
            {"id": sample_id, "batch_id": batch_id, "opens_new": opens_new},
        )
        batch = self.batches[batch_id]
        return {"batch_id": batch_id, "position": len(batch.sample_ids)}

    def _get_open_batch(self, batch_id: int) -> Batch:
        if batch_id not in self.batches:
            raise NotFoundError(f"unknown batch {batch_id}")
        batch = self.batches[batch_id]
        if batch.closed:
            raise TransitionError(f"batch {batch_id} is closed")
        return batch

    def _proxy(self):
        if self._proxy_cache is not None and self._proxy_cache[0] == len(self.corpus):
            return self._proxy_cache[1]
        samples = [self.corpus.samples[sid] for sid in self.corpus.order]
        try:
            model = train_proxy(samples, self.store, seed=self.seed)
        except TrainingError:
            model = None
        self._proxy_cache = (len(self.corpus), model)
        return model

    def decide(self, batch_id: int, sample_id: str, action: str, analyst: str) -> dict:
        if action not in ("accept", "reject", "repair_then_accept"):
            raise ValidationError([{"field": "action", "message": f"unknown action {action!r}"}])
        batch = self._get_open_batch(batch_id)
        if sample_id not in batch.sample_ids:
            raise NotFoundError(f"sample {sample_id!r} not in batch {batch_id}")
        sample = self._get_sample(sample_id)
        if sample.state != State.PENDING or sample_id in batch.decisions:
            raise TransitionError(f"sample {sample_id} is not pending review")

        if action == "accept":
            report = metrics.evaluate(sample, self.corpus, self.config)
            outcome = {"state": "Accepted", "report": report.to_dict()}
        elif action == "reject":
            outcome = {"state": "Rejected"}
        else:  # repair_then_accept
            model = self._proxy()
            if model is None:
                outcome = {
                    "state": "Pending",
                    "failure_note": "proxy model unavailable (need accepted samples with >= 2 labels)",
                }
            else:
                result = tf_repair(sample, model, self.store)
                if not result.success:
                    outcome = {"state": "Pending", "failure_note": result.reason}
                else:
                    repaired = result.sample
                    report = metrics.evaluate(repaired, self.corpus, self.config)
                    outcome = {
                        "state": "RepairedAccepted",
                        "repaired_sample": repaired.to_dict(),
                        "report": report.to_dict(),
                        "substitutions": result.substitutions,
                    }
        payload = {
            "batch_id": batch_id,
            "id": sample_id,
            "action": action,
            "analyst": analyst,
            "outcome": outcome,
            "prior_sample": sample.to_dict(),
        }
        self._commit("decide", analyst, sample_id, payload)
        return {
            "sample_id": sample_id,
            "state": self.samples[sample_id].state.value,
            "failure_note": self.batches[batch_id].failure_notes.get(sample_id),
        }

    def undo_decision(self, batch_id: int, sample_id: str, analyst: str = "") -> dict:
        batch = self._get_open_batch(batch_id)
        if sample_id not in batch.decisions:
            raise StateError(f"sample {sample_id!r} has no decision to undo in batch {batch_id}")
        # the pre-decision snapshot was stored in the decide event payload
        prior = self._find_prior_sample(batch_id, sample_id)
        was_merged = self.samples[sample_id].state in (
            State.ACCEPTED,
            State.REPAIRED_ACCEPTED,
        )
        self._commit(
            "undo_decision",
            analyst,
            sample_id,
            {
                "batch_id": batch_id,
                "id": sample_id,
                "prior_sample": prior,
                "was_merged": was_merged,
            },
        )
        return {"sample_id": sample_id, "state": State.PENDING.value}

    def _find_prior_sample(self, batch_id: int, sample_id: str) -> dict:
        for event in reversed(self.log.read_events()):
            if (
                event["action"] == "decide"
                and event["payload"]["id"] == sample_id
                and event["payload"]["batch_id"] == batch_id
            ):
                return event["payload"]["prior_sample"]
        # fall back to the current sample minus repair provenance
        return self.samples[sample_id].to_dict()

    def list_batches(self) -> list[dict]:
        return [b.to_dict() for b in sorted(self.batches.values(), key=lambda b: b.id)]

    def worker_feedback(self, worker_id: str) -> dict:
        if worker_id not in self.workers:
            raise NotFoundError(f"unknown worker {worker_id!r}")
        medians = {}
        for wid, w in self.workers.items():
            vals = [h[1] for h in w["history"]]
            medians[wid] = float(np.median(vals)) if vals else -1.0
        ranking = sorted(medians, key=lambda wid: (-medians[wid], wid))
        w = self.workers[worker_id]
        return {
            "worker_id": worker_id,
            "submitted": w["submitted"],
            "reviewed": w["reviewed"],
            "distribution": dict(w["distribution"]),
            "history": [list(h) for h in w["history"]],
            "rank": ranking.index(worker_id) + 1,
            "workers_total": len(ranking),
            "rank_quality": {
                wid: medians[wid] for wid in ranking if medians[wid] >= 0
            },
        }

    # -- split management --------------------------------------------------

    def randomize_split(self) -> dict:
        ids = list(self.corpus.order)
        n = len(ids)
        counts = _largest_remainder(n)
        shuffled = list(self.rng.permutation(ids)) if n else []
        assignment: dict[str, str] = {}
        i = 0
        for (split, _), cnt in zip(SPLIT_RATIOS, counts):
            for sid in shuffled[i : i + cnt]:
                assignment[str(sid)] = split
            i += cnt
        self._commit("split_randomize", "", None, {"assignment": assignment})
        return {"assignment": assignment, "sizes": {s: c for (s, _), c in zip(SPLIT_RATIOS, counts)}}

    def undo_split(self) -> dict:
        if not self.split_stack:
            raise StateError("no unsaved randomization to undo")
        self._commit("split_undo", "", None, {})
        return {"assignment": {sid: self.samples[sid].split for sid in self.corpus.order}}

    def save_split(self) -> dict:
        self._commit("split_save", "", None, {})
        return {"saved": True}

    # -- config ------------------------------------------------------------

    def get_config(self) -> dict:
        return self.config.to_dict()

    def put_config(self, config_dict: dict) -> dict:
        try:
            cfg = ThresholdConfig.from_dict(config_dict)
        except (KeyError, ValueError, TypeError) as exc:
            raise ValidationError([{"field": "config", "message": str(exc)}]) from None
        self._commit("config_put", "", None, {"config": cfg.to_dict()})
        return self.config.to_dict()

    # -- reporting / visualization ----------------------------------------

    def corpus_report(self, top_k: int = 5) -> dict:
        agg = self.corpus.component_aggregates()
        flag_hist = {c: Counter() for c in COMPONENTS}
        offenders = {c: [] for c in COMPONENTS}
        for sid in self.corpus.order:
            art = self.corpus.artifacts[sid]
            for i, c in enumerate(COMPONENTS):
                f = flag(float(art[i]), c, self.config)
                flag_hist[c][f] += 1
                offenders[c].append((float(art[i]), sid))
        for c in COMPONENTS:
            offenders[c].sort(key=lambda p: (-p[0], p[1]))
        return {
            "size": len(self.corpus),
            "components": [
                {
                    "component": c,
                    "aggregate": float(agg[i]),
                    "flag": flag(float(agg[i]), c, self.config),
                    "flag_histogram": {
                        f: flag_hist[c].get(f, 0) for f in ("green", "yellow", "red")
                    },
                    "worst": [
                        {"id": sid, "artifact": a} for a, sid in offenders[c][:top_k]
                    ],
                }
                for i, c in enumerate(COMPONENTS)
            ],
        }

    def viz_data(self, component: str, params: dict | None = None) -> dict:
        params = params or {}
        if component not in COMPONENTS:
            raise ValidationError([{"field": "component", "message": f"unknown component {component!r}"}])
        cap = int(params.get("cap", NEIGHBOR_CAP))
        candidate_id = params.get("candidate")
        candidate = None
        candidate_report = None
        if candidate_id is not None:
            candidate = self._get_sample(candidate_id)
            candidate_report = metrics.evaluate(candidate, self.corpus, self.config)
        builder = getattr(self, f"_viz_{component}")
        data = builder(params, cap, candidate, candidate_report)
        data["component"] = component
        if candidate_report is not None:
            data["candidate"] = {
                "id": candidate_id,
                "artifact": float(candidate_report.score(component).artifact),
                "raw": float(candidate_report.score(component).raw),
                "flag": candidate_report.score(component).flag,
            }
        return data

    def _component_flags(self, component: str) -> dict[str, str]:
        i = COMPONENTS.index(component)
        return {
            sid: flag(float(self.corpus.artifacts[sid][i]), component, self.config)
            for sid in self.corpus.order
        }

    def _viz_c1(self, params, cap, candidate, candidate_report) -> dict:
        flags = self._component_flags("c1")
        seen: set[str] = set()
        bars = []
        for sid in self.corpus.order[:cap]:
            sample = self.corpus.samples[sid]
            types = set(tokenize(sample.premise)) | set(tokenize(sample.hypothesis))
            new_types = len(types - seen)
            seen |= types
            bars.append(
                {
                    "id": sid,
                    "new_types": new_types,
                    "vocab_size_after": len(seen),
                    "flag": flags[sid],
                }
            )
        lengths = [self.corpus.hyp_lengths[sid] for sid in self.corpus.order]
        bins = int(params.get("bins", 10))
        if lengths:
            counts, edges = np.histogram(lengths, bins=bins)
        else:
            counts, edges = np.zeros(bins, dtype=int), np.linspace(0, 1, bins + 1)
        return {
            "bars": bars,
            "length_histogram": {
                "edges": [float(e) for e in edges],
                "counts": [int(c) for c in counts],
            },
        }

    def _viz_c2(self, params, cap, candidate, candidate_report) -> dict:
        n = int(params.get("n", 1))
        if n not in (1, 2, 3):
            raise ValidationError([{"field": "n", "message": "granularity must be 1, 2 or 3"}])
        table = self.corpus.ngram_counts[n]
        fmax = max(table.values()) if table else 0
        elements = sorted(table.items(), key=lambda kv: (-kv[1], kv[0]))[:cap]
        bubbles = []
        for gram, count in elements:
            a = count / fmax if fmax else 0.0
            bubbles.append(
                {"gram": " ".join(gram), "count": count, "flag": flag(a, "c2", self.config)}
            )
        extra = None
        if candidate is not None:
            extra = ngrams(tokenize(candidate.premise), n) + ngrams(tokenize(candidate.hypothesis), n)
        return {
            "granularity": n,
            "bubbles": bubbles,
            "bullet": {
                "sigma_current": self.corpus.gram_sigma(n),
                "sigma_star": self.config.sigma_star[n],
                "sigma_after": self.corpus.gram_sigma(n, extra=extra) if extra is not None else None,
            },
        }

    def _viz_c3(self, params, cap, candidate, candidate_report) -> dict:
        flags = self._component_flags("c3")
        ids = list(self.corpus.order)
        nodes = [
            {"id": sid, "flag": flags[sid], "split": self.corpus.samples[sid].split}
            for sid in ids[:cap]
        ]
        links = []
        if ids:
            hyp = np.vstack([self.corpus.hyp_vecs[sid] for sid in ids])
            sims = hyp @ hyp.T
            for i in range(len(ids)):
                for j in range(i + 1, len(ids)):
                    s = float(sims[i, j])
                    if s >= self.config.tau_link:
                        links.append({"source": ids[i], "target": ids[j], "similarity": s})
            links.sort(key=lambda l: -l["similarity"])
            links = links[:cap]
        bars = []
        if candidate is not None and ids:
            cvec = sentence_vector(tokenize(candidate.hypothesis), self.store).vec
            hyp = np.vstack([self.corpus.hyp_vecs[sid] for sid in ids])
            sims = hyp @ cvec
            order = np.argsort(-sims)[:cap]
            bars = [
                {"id": ids[int(i)], "similarity": float(sims[int(i)]), "flag": flags[ids[int(i)]]}
                for i in order
            ]
        return {"nodes": nodes, "links": links, "bars": bars, "tau_link": self.config.tau_link}

    def _viz_c4(self, params, cap, candidate, candidate_report) -> dict:
        flags = self._component_flags("c4")
        i4 = COMPONENTS.index("c4")
        raws = {sid: float(self.corpus.raws[sid][i4]) for sid in self.corpus.order}
        mean_raw = float(np.mean(list(raws.values()))) if raws else 0.0
        cells = []
        tiles = [
            {
                "id": sid,
                "raw": raws[sid],
                "artifact": float(self.corpus.artifacts[sid][i4]),
                "flag": flags[sid],
                "size": abs(raws[sid] - mean_raw),
                "outlined": False,
            }
            for sid in self.corpus.order[:cap]
        ]
        if candidate is not None:
            tiles.append(
                {
                    "id": candidate.id,
                    "raw": float(candidate_report.score("c4").raw),
                    "artifact": float(candidate_report.score("c4").artifact),
                    "flag": candidate_report.score("c4").flag,
                    "size": abs(float(candidate_report.score("c4").raw) - mean_raw),
                    "outlined": True,
                }
            )
            scope = params.get("scope", "both")
            if scope not in ("premise", "hypothesis", "both"):
                raise ValidationError([{"field": "scope", "message": f"bad scope {scope!r}"}])
            if scope == "premise":
                tokens = tokenize(candidate.premise)
            elif scope == "hypothesis":
                tokens = tokenize(candidate.hypothesis)
            else:
                tokens = tokenize(candidate.premise) + tokenize(candidate.hypothesis)
            types = sorted(set(tokens))
            lo, hi = self.config.bands["c4"]
            for a in range(len(types)):
                for b in range(a + 1, len(types)):
                    u, v = types[a], types[b]
                    if u in self.store and v in self.store:
                        value = float(np.dot(self.store[u], self.store[v]))
                    elif u == v:
                        value = 1.0
                    else:
                        continue
                    cells.append(
                        {
                            "u": u,
                            "v": v,
                            "value": value,
                            "flag": flag(
                                metrics.bilinear_artifact(value, lo, hi), "c4", self.config
                            ),
                        }
                    )
            # verbatim repeats show as similarity-1 diagonal pairs
            from collections import Counter as _Counter

            for t, cnt in _Counter(tokens).items():
                if cnt >= 2:
                    cells.append(
                        {
                            "u": t,
                            "v": t,
                            "value": 1.0,
                            "flag": flag(metrics.bilinear_artifact(1.0, lo, hi), "c4", self.config),
                        }
                    )
            cells = cells[:cap]
        return {"treemap": tiles, "heatmap": cells, "mean_raw": mean_raw}

    def _viz_c5(self, params, cap, candidate, candidate_report) -> dict:
        bins = int(params.get("bins", 30))
        if bins < 1:
            raise ValidationError([{"field": "bins", "message": "bins must be >= 1"}])
        i5 = COMPONENTS.index("c5")
        values = np.array(
            [float(self.corpus.raws[sid][i5]) for sid in self.corpus.order]
        )
        if values.size:
            counts, edges = np.histogram(values, bins=bins, range=(-1.0, 1.0))
        else:
            counts, edges = np.zeros(bins, dtype=int), np.linspace(-1, 1, bins + 1)
        kde = []
        if values.size >= 2:
            std = float(values.std())
            bw = max(1.06 * std * values.size ** (-1 / 5), 1e-3)
            xs = np.linspace(-1.0, 1.0, 101)
            dens = np.exp(-0.5 * ((xs[:, None] - values[None, :]) / bw) ** 2).sum(axis=1)
            dens /= values.size * bw * np.sqrt(2 * np.pi)
            kde = [{"x": float(x), "density": float(d)} for x, d in zip(xs, dens)]
        lo, hi = self.config.bands["c5"]
        return {
            "histogram": {
                "edges": [float(e) for e in edges],
                "counts": [int(c) for c in counts],
            },
            "kde": kde,
            "band": [lo, hi],
        }

    def _viz_c6(self, params, cap, candidate, candidate_report) -> dict:
        n = int(params.get("n", 1))
        if n not in (1, 2, 3):
            raise ValidationError([{"field": "n", "message": "granularity must be 1, 2 or 3"}])
        remove_outliers = bool(params.get("remove_outliers", False))
        per_label: dict[str, Counter] = {}
        for sid in self.corpus.order:
            sample = self.corpus.samples[sid]
            per_label.setdefault(sample.label, Counter()).update(
                ngrams(tokenize(sample.hypothesis), n)
            )
        groups = []
        for label in sorted(per_label):
            counts = per_label[label]
            items = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            if remove_outliers and items:
                median = float(np.median([c for _, c in items]))
                items = [(g, c) for g, c in items if c >= median]
            items = items[:cap]
            vals = [c for _, c in items]
            groups.append(
                {
                    "label": label,
                    "points": [{"gram": " ".join(g), "count": c} for g, c in items],
                    "stats": {
                        "min": float(min(vals)) if vals else 0.0,
                        "max": float(max(vals)) if vals else 0.0,
                        "median": float(np.median(vals)) if vals else 0.0,
                        "mean": float(np.mean(vals)) if vals else 0.0,
                    },
                }
            )
        return {"granularity": n, "remove_outliers": remove_outliers, "groups": groups}

    def _viz_c7(self, params, cap, candidate, candidate_report) -> dict:
        flags = self._component_flags("c7")
        links = []
        for sid in self.corpus.order:
            sample = self.corpus.samples[sid]
            if sample.split not in ("dev", "test"):
                continue
            sim, ref = self.corpus.max_cosine(
                self.corpus.hyp_vecs[sid], splits=("train",)
            )
            if ref is None:
                continue
            links.append(
                {
                    "from_id": sid,
                    "from_split": sample.split,
                    "to_id": ref[0],
                    "to_part": ref[1],
                    "similarity": float(sim),
                    "flag": flags[sid],
                }
            )
        links.sort(key=lambda l: -l["similarity"])
        return {"links": links[:cap]}


def _largest_remainder(n: int) -> list[int]:
    """Split n into 70:10:20 integer counts by largest remainder."""
    quotas = [n * p for _, p in SPLIT_RATIOS]
    floors = [int(q) for q in quotas]
    short = n - sum(floors)
    order = sorted(range(3), key=lambda i: -(quotas[i] - floors[i]))
    for i in range(short):
        floors[order[i]] += 1
    return floors
