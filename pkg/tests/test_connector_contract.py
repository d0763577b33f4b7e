"""Connector contract suite, run against every backend implementation.
Swapping backends must never require autonomy changes, so the contract is
pinned here once and parametrized over implementations."""

import pytest

from aeroexec.sim import (
    AlreadyBound,
    PlantConfig,
    ScriptedBackend,
    SimBackend,
    SimVehicle,
    VehicleCommand,
    VehicleMode,
)


def sim_backend():
    return SimBackend(SimVehicle(PlantConfig(), seed=0))


def scripted_backend():
    return ScriptedBackend()


BACKENDS = [sim_backend, scripted_backend]
IDS = ["sim", "scripted-mock"]


@pytest.fixture(params=BACKENDS, ids=IDS)
def backend(request):
    return request.param()


def test_double_bind_rejected(backend):
    backend.bind()
    with pytest.raises(AlreadyBound):
        backend.bind()


def test_release_allows_rebinding(backend):
    backend.bind()
    backend.release()
    backend.bind()


def test_arm_before_offboard_rejected(backend):
    session = backend.bind()
    ack = session.send_command(VehicleCommand.arm())
    assert not ack.accepted and ack.reason == "ModeNotOffboard"


def test_mode_then_arm_then_setpoint(backend):
    session = backend.bind()
    assert session.send_command(VehicleCommand.set_mode(VehicleMode.OFFBOARD)).accepted
    assert session.send_command(VehicleCommand.arm()).accepted
    assert session.send_command(VehicleCommand.position((1.0, 2.0, 5.0))).accepted


def test_setpoint_while_disarmed_rejected(backend):
    session = backend.bind()
    session.send_command(VehicleCommand.set_mode(VehicleMode.OFFBOARD))
    ack = session.send_command(VehicleCommand.position((1.0, 2.0, 5.0)))
    assert not ack.accepted and ack.reason == "NotArmed"


def test_telemetry_surface_complete(backend):
    session = backend.bind()
    state = session.vehicle_state()
    assert state.on_ground and not state.armed
    sample = session.health_sample()
    assert 0.0 <= sample.battery_fraction <= 1.0
    assert isinstance(session.landing_sites(), list)
    session.set_detector(True)   # accepted without error on every backend


def test_scripted_rejections_are_observable():
    """The mock can force rejections the plant would never produce."""
    from aeroexec.sim.types import CommandKind

    backend = ScriptedBackend(reject={CommandKind.ARM: "ActuatorFault"})
    session = backend.bind()
    session.send_command(VehicleCommand.set_mode(VehicleMode.OFFBOARD))
    ack = session.send_command(VehicleCommand.arm())
    assert not ack.accepted and ack.reason == "ActuatorFault"
    assert [c.kind for c in backend.session.commands] == [CommandKind.SET_MODE,
                                                          CommandKind.ARM]
