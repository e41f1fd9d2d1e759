#!/usr/bin/env python3
"""Regenerates the JSON fixtures under fixtures/."""
import copy
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def element(eid, dimension, stage, validity=None, expert=False, ports=None):
    return {
        "id": eid,
        "dimension": dimension,
        "stage": stage,
        "validity": validity or [],
        "expert_asserted_valid": expert,
        "ports": ports or [],
        "criterion_costs": {},
    }


def domain(quantity, unit, lo, hi):
    return {"quantity": quantity, "unit": unit, "interval": [lo, hi]}


def provides(name, protocol):
    return {"name": name, "protocol": protocol, "direction": "provides"}


def requires(name, protocol):
    return {"name": name, "protocol": protocol, "direction": "requires"}


HIL_ELEMENTS = [
    element("scenery_sm", "scenery", "simulated"),
    element("movable_objects_sm", "movable_objects", "simulated"),
    element("environmental_conditions_sm", "environmental_conditions", "simulated"),
    element("v2x_sm", "v2x_communication", "simulated"),
    element("target_ecu", "test_object", "real", ports=[requires("vehicle_state", "can")]),
    element("radar_sm", "environment_perception_sensors/radar", "simulated"),
    element("camera_sm", "environment_perception_sensors/camera", "simulated"),
    element("localization_sm", "localization_sensors", "simulated"),
    element(
        "single_track_sm",
        "vehicle_dynamics",
        "simulated",
        validity=[
            domain("lateral_acceleration", "m/s^2", -3, 3),
            domain("longitudinal_acceleration", "m/s^2", -6, 6),
        ],
        ports=[provides("vehicle_state", "can")],
    ),
    element(
        "double_track_sm",
        "vehicle_dynamics",
        "simulated",
        validity=[
            domain("lateral_acceleration", "m/s^2", -8, 8),
            domain("longitudinal_acceleration", "m/s^2", -8, 8),
        ],
        ports=[provides("vehicle_state", "can")],
    ),
    element("driver_sm", "driver_user_behavior", "simulated"),
    element("residual_vehicle_sm", "residual_vehicle", "simulated"),
]

HIL_BASE_SELECTION = {
    "scenery": "scenery_sm",
    "movable_objects": "movable_objects_sm",
    "environmental_conditions": "environmental_conditions_sm",
    "v2x_communication": "v2x_sm",
    "test_object": "target_ecu",
    "environment_perception_sensors/radar": "radar_sm",
    "environment_perception_sensors/camera": "camera_sm",
    "localization_sensors": "localization_sm",
    "driver_user_behavior": "driver_sm",
    "residual_vehicle": "residual_vehicle_sm",
}


def hil_config(cid, vehicle_dynamics, cost):
    selection = dict(HIL_BASE_SELECTION)
    selection["vehicle_dynamics"] = vehicle_dynamics
    return {"id": cid, "selection": selection, "cost_override": cost}


TV_ELEMENTS = [
    element("proving_ground", "scenery", "real"),
    element("real_vehicle_obstacle", "movable_objects", "real"),
    element("real_weather", "environmental_conditions", "real"),
    element("preproduction_v2x", "v2x_communication", "emulated", expert=True),
    element("target_ecu_tv", "test_object", "real", ports=[requires("vehicle_state", "can")]),
    element("preproduction_radar", "environment_perception_sensors/radar", "emulated", expert=True),
    element("preproduction_camera", "environment_perception_sensors/camera", "emulated", expert=True),
    element("preproduction_localization", "localization_sensors", "emulated", expert=True),
    element(
        "former_vehicle_dynamics",
        "vehicle_dynamics",
        "emulated",
        expert=True,
        ports=[provides("vehicle_state", "can")],
    ),
    element("real_user", "driver_user_behavior", "real"),
    element("former_residual_vehicle", "residual_vehicle", "emulated", expert=True),
]

TV_SELECTION = {
    "scenery": "proving_ground",
    "movable_objects": "real_vehicle_obstacle",
    "environmental_conditions": "real_weather",
    "v2x_communication": "preproduction_v2x",
    "test_object": "target_ecu_tv",
    "environment_perception_sensors/radar": "preproduction_radar",
    "environment_perception_sensors/camera": "preproduction_camera",
    "localization_sensors": "preproduction_localization",
    "vehicle_dynamics": "former_vehicle_dynamics",
    "driver_user_behavior": "real_user",
    "residual_vehicle": "former_residual_vehicle",
}

SIL_ELEMENTS = [
    element("sil_scenery_sm", "scenery", "simulated"),
    element("sil_movable_objects_sm", "movable_objects", "simulated"),
    element("sil_environmental_conditions_sm", "environmental_conditions", "simulated"),
    element("sil_v2x_sm", "v2x_communication", "simulated"),
    element("sil_software_under_test", "test_object", "simulated"),
    element("sil_sensors_sm", "environment_perception_sensors", "simulated"),
    element("sil_localization_sm", "localization_sensors", "simulated"),
    element("sil_vehicle_dynamics_sm", "vehicle_dynamics", "simulated"),
    element("sil_driver_sm", "driver_user_behavior", "simulated"),
    element("sil_residual_vehicle_sm", "residual_vehicle", "simulated"),
]

CUT_IN_TEST_CASE = {
    "id": "cut_in",
    "scenario_parameters": {
        "v_E": {"value": 120, "unit": "km/h", "layer": "L4"},
        "v_C": {"value": 130, "unit": "km/h", "layer": "L4"},
        "d_s": {"value": -3, "unit": "m", "layer": "L4"},
        "d_sm": {"value": 20, "unit": "m", "layer": "L4"},
        "ego_peak_lateral_acceleration": {"value": 3.5, "unit": "m/s^2", "layer": "L4"},
    },
    "evaluation_criteria": [
        {
            "id": "no_collision",
            "quantity": "distance_to_nearest_object",
            "unit": "m",
            "aggregate": "min",
            "comparison": "greater",
            "threshold": 0,
        }
    ],
    "required_validity": {
        "vehicle_dynamics": [
            domain("lateral_acceleration", "m/s^2", -0.5, 0.5),
            domain("longitudinal_acceleration", "m/s^2", -2, 0.5),
        ]
    },
}


def catalog(benches, test_cases):
    return {
        "schema_version": "tbc/1",
        "weights": {"time_use": 0.5, "execution_cost": 0.5},
        "options": {"margin": 0, "max_iterations": 8},
        "requirements": {
            "allowed_stages": {"test_object": ["real"]},
            "required_ports": [],
        },
        "benches": benches,
        "test_cases": test_cases,
    }


def bench(bid, elements, configurations):
    return {
        "id": bid,
        "elements": elements,
        "coupling_rules": [],
        "uncovered_dimensions": [],
        "configurations": configurations,
    }


def main():
    OUT.mkdir(exist_ok=True)

    hil = bench("hil", HIL_ELEMENTS, [
        hil_config("HiL-TBC-1", "single_track_sm", 3),
        hil_config("HiL-TBC-2", "double_track_sm", 4),
    ])
    tv = bench("tv", TV_ELEMENTS, [
        {"id": "TV-TBC-1", "selection": TV_SELECTION, "cost_override": 8},
    ])
    sil = bench("sil", SIL_ELEMENTS, [])

    base = catalog([hil, sil, tv], [CUT_IN_TEST_CASE])
    (OUT / "cut_in.catalog.json").write_text(json.dumps(base, indent=2, sort_keys=True) + "\n")

    # Note-5 variant: the double-track model is not provided.
    hil5 = copy.deepcopy(hil)
    hil5["elements"] = [e for e in hil5["elements"] if e["id"] != "double_track_sm"]
    hil5["configurations"] = [c for c in hil5["configurations"] if c["id"] != "HiL-TBC-2"]
    no_double_track = catalog([hil5, sil, copy.deepcopy(tv)], [copy.deepcopy(CUT_IN_TEST_CASE)])
    (OUT / "cut_in_no_double_track.catalog.json").write_text(
        json.dumps(no_double_track, indent=2, sort_keys=True) + "\n")

    # Note-5 variant after one adaptation round: required lateral validity
    # already widened to [-3.5, 3.5].
    adapted = copy.deepcopy(no_double_track)
    adapted["test_cases"][0]["required_validity"]["vehicle_dynamics"][0]["interval"] = [-3.5, 3.5]
    (OUT / "cut_in_adapted.catalog.json").write_text(
        json.dumps(adapted, indent=2, sort_keys=True) + "\n")

    trace = {
        "schema_version": "tbc/1",
        "test_case_id": "cut_in",
        "tbc_id": "",
        "step": 0.1,
        "series": {
            "lateral_acceleration": {"unit": "m/s^2", "samples": [0, 1.5, 3.5, 1, 0]},
            "longitudinal_acceleration": {"unit": "m/s^2", "samples": [0, 0, 0, 0, 0]},
            "distance_to_nearest_object": {"unit": "m", "samples": [20, 18, 15, 16, 18]},
        },
    }
    (OUT / "peak35.trace.json").write_text(json.dumps(trace, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
