"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Run with `pytest tests/test_acceptance.py -v -s`.

Criteria:
  1. 170-trial event-replay campaign: every trial terminates, zero
     crashes, 100% transition verification, exact per-state event matrix,
     finishing well inside the runtime budget at >= 20x sim speed.
  2. 100-trial randomized distance campaign: zero crashes in every bin and
     a non-decreasing emergency-landing fraction across distance bins.
  3. Health monitor: >= 98.5% detection of 1000 noisy threshold
     violations within 2 s; zero false positives on clean signals.
  4. Table validator agrees with the independent BFS oracle on the
     canonical table and two crafted negatives.
  5. Engine ticks equal the naive reference interpreter on 10,000 random
     trees, with zero divergences.
  6. Real-time loop: median enqueue-to-transition latency < 5 ms and mean
     cycle period within 10% of the configured 50 Hz.
  7. Event-free mission visits exactly the nominal phase sequence with
     all waypoint tasks executed in plan order.
"""

import random
import statistics
import threading
import time

import pytest

from aeroexec.bt import build_tree
from aeroexec.clock import SimClock
from aeroexec.coordinator import Coordinator, EventQueue, LoopConfig, RealTimeDriver
from aeroexec.fsm import (
    Event,
    MissionStateMachine,
    canonical_table,
    validate_table,
)
from aeroexec.fsm.events import EventSource
from aeroexec.fsm.states import NOMINAL_SEQUENCE
from aeroexec.fsm.table import TransitionTable
from aeroexec.healthguard import HealthSample, Healthguard, ThresholdConfig, measure_accuracy
from aeroexec.montecarlo import (
    TABLE1_MATRIX,
    TrialSpec,
    build_fig6_trials,
    build_table1_trials,
    run_campaign,
    run_trial,
)

from .reference_bt import RefTree
from .support import action, scripted_registry, seq
from .test_bt_oracle import STATUS_NAME, random_tree
from .test_fsm_table import oracle_report


def report(criterion: int, passed: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")
    assert passed, f"criterion {criterion}: {detail}"


# -- 1: event replay campaign ---------------------------------------------------


def test_criterion_1_table1_replay_campaign():
    specs = build_table1_trials(base_seed=1000)
    wall0 = time.perf_counter()
    campaign = run_campaign(specs, jobs=2)
    wall = time.perf_counter() - wall0

    all_terminate = all(o.terminal_state == "Terminate" for o in campaign.outcomes)
    crashes = campaign.crash_count
    verified = campaign.all_verified
    matrix_ok = campaign.table1_counts() == TABLE1_MATRIX
    total_sim = sum(o.sim_time for o in campaign.outcomes)
    speed = total_sim / wall

    ok = (len(campaign.outcomes) == 170 and all_terminate and crashes == 0
          and verified and matrix_ok and wall < 600.0 and speed >= 20.0)
    report(1, ok, (
        f"170 trials: terminate={all_terminate}, crashes={crashes}, "
        f"verified={verified}, matrix_match={matrix_ok}, "
        f"wall={wall:.1f}s, sim_speed={speed:.0f}x"))


# -- 2: randomized distance campaign ------------------------------------------------


def test_criterion_2_fig6_distance_campaign():
    specs = build_fig6_trials(base_seed=5000)
    campaign = run_campaign(specs, jobs=2)
    bins = campaign.fig6_counts()
    crashes_per_bin = [b["Crash"] for b in bins]
    timeouts = [b["Timeout"] for b in bins]
    fractions = [b["EmergencyLanding"] / max(1, sum(b.values())) for b in bins]
    monotone = all(a <= b for a, b in zip(fractions, fractions[1:]))

    ok = (len(campaign.outcomes) == 100 and sum(crashes_per_bin) == 0
          and sum(timeouts) == 0 and monotone and campaign.all_verified)
    report(2, ok, (
        f"crashes/bin={crashes_per_bin}, "
        f"emergency fractions={[round(f, 2) for f in fractions]}, "
        f"monotone={monotone}"))


# -- 3: health monitor detection accuracy ----------------------------------------------


def test_criterion_3_healthguard_detection_accuracy():
    cfg = ThresholdConfig()          # defaults: low 0.30, debounce 3, hysteresis 0.02
    hg = Healthguard(cfg)
    rng = random.Random(2024)
    period = 0.1                     # 10 Hz sampling
    sigma = 0.01                     # 1% of the [0, 1] battery range
    baseline = 0.5

    injected: list[tuple[float, str]] = []
    t = period
    samples: list[HealthSample] = []

    def emit(value: float) -> None:
        nonlocal t
        noisy = value + rng.gauss(0.0, sigma)
        samples.append(HealthSample(t, noisy, 19.8 + noisy * 5.4, 1.0, True, 0))
        t += period

    for _ in range(1000):
        for _ in range(25):          # 2.5 s recovery above threshold + hysteresis
            emit(baseline)
        injected.append((t, "BatteryLow"))
        depth = rng.uniform(2 * sigma, 5 * sigma)
        for _ in range(15):          # 1.5 s violation dwell
            emit(cfg.battery_low - depth)
    for _ in range(25):
        emit(baseline)

    for sample in samples:
        hg.ingest(sample)
    emitted = [(e["t"], e["event"]) for e in hg.event_log]
    accuracy = measure_accuracy(injected, emitted, tolerance=2.0)

    # Clean-signal run: same length, no dips, fresh monitor.
    hg2 = Healthguard(ThresholdConfig())
    t2 = period
    clean_events = 0
    for _ in range(40_000):
        noisy = baseline + rng.gauss(0.0, sigma)
        clean_events += len(hg2.ingest(
            HealthSample(t2, noisy, 19.8 + noisy * 5.4, 1.0, True, 0)))
        t2 += period

    ok = (accuracy.true_positive_rate >= 0.985
          and accuracy.mean_latency <= 2.0
          and clean_events == 0)
    report(3, ok, (
        f"TPR={accuracy.true_positive_rate:.4f} "
        f"({accuracy.detected}/{accuracy.injected}), "
        f"mean latency={accuracy.mean_latency:.2f}s, "
        f"clean-signal emissions={clean_events}"))


# -- 4: validator vs oracle -------------------------------------------------------


def test_criterion_4_fsm_validator_matches_bfs_oracle():
    canonical = canonical_table()
    canonical_report = validate_table(canonical)
    canonical_ok = canonical_report.passed and oracle_report(canonical) == ([], [])

    orphaned = canonical_table()
    orphaned.add("Init", "BtSuccess", "Takeoff")      # nothing enters PreChecks
    orphan_expect = oracle_report(orphaned)
    orphan_result = validate_table(orphaned)
    orphan_ok = (not orphan_result.passed
                 and orphan_result.unreachable == orphan_expect[0] == ["PreChecks"]
                 and orphan_result.no_final_path == orphan_expect[1] == [])

    stranded = canonical_table()
    del stranded.rows[("EmergencyLand", "BtSuccess")]
    del stranded.rows[("EmergencyLand", "BtFailure")]
    stranded_expect = oracle_report(stranded)
    stranded_result = validate_table(stranded)
    stranded_ok = (not stranded_result.passed
                   and stranded_result.no_final_path == stranded_expect[1] == ["EmergencyLand"]
                   and stranded_result.unreachable == stranded_expect[0] == [])

    ok = canonical_ok and orphan_ok and stranded_ok
    report(4, ok, (
        f"canonical pass={canonical_ok}, unreachable case={orphan_ok}, "
        f"no-final-path case={stranded_ok}"))


# -- 5: engine vs reference on 10k random trees ----------------------------------------


def test_criterion_5_bt_oracle_equivalence_10k():
    divergences = 0
    cases = 10_000
    for seed in range(cases):
        rng = random.Random(seed)
        spec = random_tree(rng, depth=4)
        engine = build_tree(spec, scripted_registry())
        reference = RefTree(spec)
        clock = SimClock()
        for _ in range(6):
            got = engine.tick(clock)
            want = reference.tick(clock.now())
            if STATUS_NAME[got] != want:
                divergences += 1
                break
            clock.advance(1.0)
            if want != "running":
                break
    report(5, divergences == 0, f"{cases} random trees, divergences={divergences}")


# -- 6: loop latency and cadence ----------------------------------------------------


def test_criterion_6_latency_and_cycle_period():
    # Ping-pong table so every injected event causes a transition.
    table = TransitionTable(initial="A", finals={"F"})
    table.add("A", "go", "B").add("B", "go", "A")
    table.add("A", "end", "F").add("B", "end", "F")
    registry = scripted_registry()
    machine = MissionStateMachine(table, lambda spec: build_tree(spec, registry))
    machine.bind_state("A", seq(action("R")))
    machine.bind_state("B", seq(action("R")))
    coordinator = Coordinator(machine, EventQueue(), SimClock(),
                              LoopConfig(tick_period=0.02))
    coordinator.start()
    driver = RealTimeDriver(coordinator)

    stop = threading.Event()

    def injector():
        rng = random.Random(8)
        while not stop.is_set():
            time.sleep(rng.uniform(0.02, 0.06))
            coordinator.enqueue_event(Event("go", EventSource.EXTERNAL, 50))

    thread = threading.Thread(target=injector, daemon=True)
    thread.start()
    driver.run(duration_s=4.0)
    stop.set()
    thread.join(timeout=1.0)

    latencies_ms = [s * 1000 for s in coordinator.latencies_s]
    median_latency = statistics.median(latencies_ms) if latencies_ms else float("inf")
    mean_period = statistics.fmean(driver.cycle_periods) if driver.cycle_periods else 0.0
    period_error = abs(mean_period - 0.02) / 0.02

    ok = median_latency < 5.0 and period_error < 0.10 and len(latencies_ms) >= 40
    report(6, ok, (
        f"median latency={median_latency:.2f}ms over {len(latencies_ms)} "
        f"transitions, mean cycle period={mean_period * 1000:.2f}ms "
        f"(err {period_error:.1%})"))


# -- 7: nominal end-to-end ---------------------------------------------------------


def test_criterion_7_nominal_end_to_end():
    plan_doc = {
        "version": "1", "frame": "local_enu", "cruise_altitude": 10.0,
        "waypoints": [
            {"id": "takeoff", "position": [0, 0, 10]},
            {"id": "sci1", "position": [70, 0, 10],
             "tasks": [{"kind": "Science", "params": {"duration_s": 3, "label": "outcrop"}}]},
            {"id": "lss1", "position": [70, 70, 10],
             "tasks": [{"kind": "LandingSiteSearch",
                        "params": {"extent_m": 30, "min_confidence": 0.6}}]},
            {"id": "sci2", "position": [0, 70, 10],
             "tasks": [{"kind": "Science", "params": {"duration_s": 2, "label": "ridge"}}]},
        ],
    }
    outcome = run_trial(TrialSpec(seed=2718, plan=plan_doc))

    states = [outcome.transition_log[0]["from"]] + [t["to"] for t in outcome.transition_log]
    collapsed = [states[0]]
    for state in states[1:]:
        if state != collapsed[-1]:
            collapsed.append(state)
    sequence_ok = collapsed == NOMINAL_SEQUENCE

    labels = [label for _, label in outcome.task_log]
    tasks_ok = labels == ["Science:outcrop", "LandingSiteSearch:lss1", "Science:ridge"]

    ok = (outcome.classification == "Completed" and sequence_ok and tasks_ok)
    report(7, ok, (
        f"classification={outcome.classification}, phases={'>'.join(collapsed)}, "
        f"tasks={labels}"))
