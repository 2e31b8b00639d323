"""Regenerate the shipped deployment fixture in canonical form.

Run from the repo root: python scripts/make_fixture.py
"""

import copy
import json
import pathlib

from vaspi.formats import serialize_model
from vaspi.model import parse_model
from vaspi.svm import _DEFAULT_DOCUMENT

LIT = [
    {"kind": "literature", "label": "76"},
    {"kind": "literature", "label": "111"},
    {"kind": "literature", "label": "39"},
    {"kind": "literature", "label": "4"},
]
CI_LIT = [
    {"kind": "literature", "label": "111"},
    {"kind": "literature", "label": "39"},
    {"kind": "literature", "label": "4"},
]

PERCEIVED = [
    "Customer/Perceived value/Intrinsic value/functionality",
    "Customer/Perceived value/Intrinsic value/reliability",
    "Customer/Perceived value/Intrinsic value/usability",
]
PRODUCTION = [
    "Internal Business Process/production value/market requirement value",
    "Internal Business Process/production value/physical value wrt. time",
]
TECHNOLOGY = [
    "Innovation and learning/value of technology/human capital value",
    "Innovation and learning/value of technology/customer capital value",
    "Innovation and learning/value of technology/market value size",
]

taxonomy = copy.deepcopy(_DEFAULT_DOCUMENT)
taxonomy["version"] = "svm-deployment"
taxonomy["perspectives"].append(
    {
        "name": "Unmapped",
        "children": [{"name": "communication & collaboration", "children": []}],
    }
)

document = {
    "context": "deployment",
    "origin": "literature",
    "taxonomy": taxonomy,
    "principles": [],
    "practices": [
        {
            "id": "automated-deployment",
            "name": "Automated deployment",
            "description": "Releases are pushed to target environments by scripted, repeatable pipelines instead of manual steps.",
            "principles": [],
            "depends": [],
            "provenance": [],
        },
        {
            "id": "continuous-integration",
            "name": "Continuous integration",
            "description": "Every change is merged, built and tested against the shared mainline several times a day.",
            "principles": [],
            "depends": [],
            "provenance": [{"kind": "literature", "label": "48"}],
        },
        {
            "id": "continuous-deployment",
            "name": "Continuous deployment",
            "description": "Changes that pass the automated pipeline go to production without manual release decisions.",
            "principles": [],
            "depends": [["automated-deployment", "continuous-integration"]],
            "provenance": [
                {"kind": "literature", "label": "111", "note": "R1"},
                {"kind": "literature", "label": "48", "note": "R2"},
            ],
        },
    ],
    "benefits": [
        {"id": "b1-fast-frequent-releases", "name": "Fast & frequent releases", "svm": PERCEIVED, "provenance": LIT},
        {"id": "b2-cost-saving", "name": "Cost saving", "svm": PERCEIVED, "provenance": LIT},
        {"id": "b3-quick-responses", "name": "Quick responses", "svm": PERCEIVED, "provenance": LIT},
        {"id": "b4-increase-productivity", "name": "Increase productivity", "svm": PRODUCTION, "provenance": LIT},
        {"id": "b5-repeatability", "name": "Repeatability", "svm": TECHNOLOGY, "provenance": LIT},
        {"id": "b6-predictability", "name": "Predictability", "svm": TECHNOLOGY, "provenance": LIT},
        {
            "id": "b7-collaboration",
            "name": "Communication/Collaboration",
            "svm": ["Unmapped/communication & collaboration"],
            "provenance": CI_LIT,
        },
    ],
    "realizes": [
        {"practice": "automated-deployment", "benefit": "b5-repeatability", "provenance": []},
        {"practice": "automated-deployment", "benefit": "b6-predictability", "provenance": []},
        {"practice": "continuous-deployment", "benefit": "b1-fast-frequent-releases",
         "provenance": [{"kind": "literature", "label": "111"}]},
        {"practice": "continuous-deployment", "benefit": "b2-cost-saving",
         "provenance": [{"kind": "literature", "label": "111"}]},
        {"practice": "continuous-integration", "benefit": "b1-fast-frequent-releases", "provenance": CI_LIT},
        {"practice": "continuous-integration", "benefit": "b3-quick-responses", "provenance": CI_LIT},
        {"practice": "continuous-integration", "benefit": "b4-increase-productivity", "provenance": CI_LIT},
        {"practice": "continuous-integration", "benefit": "b6-predictability", "provenance": CI_LIT},
        {"practice": "continuous-integration", "benefit": "b7-collaboration", "provenance": CI_LIT},
    ],
}

model = parse_model(json.dumps(document))
text = serialize_model(model)
assert parse_model(text) == model

root = pathlib.Path(__file__).resolve().parent.parent
for target in (root / "src/vaspi/data/deployment.bdn.json", root / "fixtures/deployment.bdn.json"):
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    print(f"wrote {target}")
