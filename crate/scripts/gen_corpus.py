#!/usr/bin/env python3
"""Generate the bundled synthetic bibliographic corpus.

Writes crates/core/data/synthetic_corpus.jsonl: 200 JSON-lines records with
id, entry_date, title, abstract and authors. Output is deterministic.
"""
import json
import random
from datetime import date, timedelta
from pathlib import Path

SEED = 20240611
N_DOCS = 200

TOPICS = {
    "lane": ["lane departure warning", "lane keeping assist", "lane change decision",
             "lane marking detection", "road boundary estimation"],
    "radar": ["adaptive cruise control", "radar target tracking", "millimeter wave radar",
              "doppler velocity estimate", "clutter suppression filter"],
    "vision": ["pedestrian detection network", "traffic sign recognition", "stereo camera depth",
               "night vision system", "rear camera view"],
    "driver": ["driver drowsiness detection", "driver monitoring system", "eye gaze tracking",
               "steering wheel torque", "driver workload estimate"],
    "v2x": ["vehicle to vehicle communication", "v2v/v2i message latency", "5.9 ghz channel model",
            "cooperative collision warning", "roadside unit coverage"],
    "parking": ["automated parking assist", "ultrasonic distance sensor", "parking slot detection",
                "surround view monitor", "low speed manoeuvre"],
    "fusion": ["sensor fusion architecture", "kalman filter tracking", "occupancy grid map",
               "object list fusion", "multi target tracking"],
    "braking": ["autonomous emergency braking", "time to collision", "brake pressure control",
                "forward collision warning", "crash avoidance performance"],
}
GLUE = ["robust", "real time", "low cost", "embedded", "probabilistic", "scalable"]
VERBS = ["evaluate", "propose", "improve", "validate", "combine", "benchmark"]
FIRST = ["Ana", "Bo", "Carla", "Dmitri", "Elena", "Farid", "Grace", "Hiro", "Ines", "Jose Javier",
         "Kwame", "Lena", "Marco", "Nadia", "Omar", "Priya", "Quentin", "Rosa", "Sven", "Tariq",
         "Uma", "Victor", "Wen", "Xavier", "Yara", "Zoltan"]
LAST = ["Anaya", "Berg", "Costa", "Dube", "Eriksen", "Fischer", "Garcia", "Huang", "Ito", "Jensen",
        "Kowalski", "Li", "Moreau", "Novak", "Okafor", "Park", "Rossi", "Silva", "Tanaka", "Ueda",
        "Vogel", "Weber", "Yilmaz", "Zhou"]


def variant(rng, first, last):
    """Spelling variants that normalise to the same string, plus initials that do not."""
    r = rng.random()
    if r < 0.55:
        return f"{first} {last}"
    if r < 0.8:
        return f"{last}, {first}"
    if r < 0.92:
        return f" {first}  {last}."
    initials = " ".join(part[0] + "." for part in first.split())
    return f"{initials} {last}"


def sentence(rng, topic):
    phrases = rng.sample(TOPICS[topic], 2)
    glue = rng.choice(GLUE)
    verb = rng.choice(VERBS)
    forms = [
        f"We {verb} a {glue} {phrases[0]} for {phrases[1]}.",
        f"The {phrases[0]} is combined with {glue} {phrases[1]}!",
        f"This paper presents {phrases[0]} and {phrases[1]}.",
        f"Results show {glue} {phrases[0]} under field {rng.choice(['tests', 'trials', 'conditions'])}.",
    ]
    return rng.choice(forms)


def main():
    rng = random.Random(SEED)
    people = [(f, l) for f in FIRST for l in LAST]
    rng.shuffle(people)
    groups = [people[i * 4:(i + 1) * 4] for i in range(12)]
    loners = people[48:]
    start = date(2005, 1, 3)
    docs = []
    day = start
    for k in range(N_DOCS):
        # roughly one document a fortnight, with same-day ties
        if rng.random() > 0.15:
            day = day + timedelta(days=rng.randint(1, 30))
        topics = rng.sample(sorted(TOPICS), rng.choice([1, 2, 2, 3]))
        title_topic = topics[0]
        title = rng.choice(TOPICS[title_topic]).title() + " " + rng.choice(
            ["Using", "With", "For", "Based On"]) + " " + rng.choice(TOPICS[topics[-1]]).title()
        abstract = " ".join(sentence(rng, rng.choice(topics)) for _ in range(rng.randint(2, 5)))
        if rng.random() < 0.12:
            authors = [variant(rng, *loners[k % len(loners)])]
        else:
            group = rng.choice(groups)
            authors = [variant(rng, *p) for p in rng.sample(group, rng.randint(1, 3))]
        docs.append({
            "id": f"DOC{k + 1:04d}",
            "entry_date": day.isoformat(),
            "title": title,
            "abstract": abstract,
            "authors": authors,
        })
    # input order is not chronological
    rng.shuffle(docs)
    out = Path(__file__).resolve().parent.parent / "crates/core/data/synthetic_corpus.jsonl"
    with out.open("w") as fh:
        for d in docs:
            fh.write(json.dumps(d, ensure_ascii=False) + "\n")
    print(f"wrote {len(docs)} documents to {out}")


if __name__ == "__main__":
    main()
