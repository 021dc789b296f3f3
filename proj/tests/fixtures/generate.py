"""Regenerates the checked-in test fixtures.

    python3 tests/fixtures/generate.py graphs     # needs: onnx, numpy
    python3 tests/fixtures/generate.py tokens     # needs: open_clip tokenizer.py, ftfy, regex, torch
    python3 tests/fixtures/generate.py golden     # stdlib only

The graphs are tiny stand-ins with the same input/output contract as the
exported encoders. token_ids.json freezes the reference tokenizer's output on
bpe_simple_vocab_16e6.txt.gz for a fixed set of strings. golden.json and
golden.cache are written from the key and cache layout rules with hashlib and
struct alone, independent of the C++ code.
"""

import glob
import hashlib
import json
import struct
import os
import sys

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))

INPUT_SIZE = 32
DIM = 16


def weights(rows, cols, phase):
    i = np.arange(rows, dtype=np.float64)[:, None]
    j = np.arange(cols, dtype=np.float64)[None, :]
    return np.sin(0.7 * i + 1.3 * j + phase).astype(np.float32)


def save(model, name):
    import onnx

    onnx.checker.check_model(model)
    onnx.save(model, os.path.join(HERE, name))


def image_graph(dim):
    from onnx import TensorProto, helper, numpy_helper

    w = weights(3, dim, 0.1)
    b = (0.01 * np.arange(dim, dtype=np.float32)).astype(np.float32)
    nodes = [
        helper.make_node("GlobalAveragePool", ["image"], ["pooled"]),
        helper.make_node("Flatten", ["pooled"], ["flat"], axis=1),
        helper.make_node("Gemm", ["flat", "w", "b"], ["embedding"], transB=1),
    ]
    graph = helper.make_graph(
        nodes,
        "image_encoder",
        [helper.make_tensor_value_info("image", TensorProto.FLOAT, [1, 3, INPUT_SIZE, INPUT_SIZE])],
        [helper.make_tensor_value_info("embedding", TensorProto.FLOAT, [1, dim])],
        [numpy_helper.from_array(np.ascontiguousarray(w.T), "w"), numpy_helper.from_array(b, "b")],
    )
    return helper.make_model(graph, opset_imports=[helper.make_opsetid("", 11)], ir_version=6)


def text_graph(dim):
    from onnx import TensorProto, helper, numpy_helper

    # Token ids are large; scale them down before the projection.
    w = (weights(77, dim, 0.4) * 1e-4).astype(np.float32)
    b = (0.02 * np.cos(np.arange(dim, dtype=np.float32))).astype(np.float32)
    nodes = [helper.make_node("Gemm", ["tokens", "w", "b"], ["embedding"], transB=1)]
    graph = helper.make_graph(
        nodes,
        "text_encoder",
        [helper.make_tensor_value_info("tokens", TensorProto.FLOAT, [1, 77])],
        [helper.make_tensor_value_info("embedding", TensorProto.FLOAT, [1, dim])],
        [numpy_helper.from_array(np.ascontiguousarray(w.T), "w"), numpy_helper.from_array(b, "b")],
    )
    return helper.make_model(graph, opset_imports=[helper.make_opsetid("", 11)], ir_version=6)


def make_graphs():
    save(image_graph(DIM), "image_encoder.onnx")
    save(text_graph(DIM), "text_encoder.onnx")
    save(text_graph(DIM - 4), "text_encoder_dim12.onnx")
    with open(os.path.join(HERE, "corrupt.onnx"), "wb") as f:
        f.write(b"not an onnx graph\x00\x01\x02")


EXTRA_STRINGS = [
    "",
    "a photo",
    "a photo of a cat",
    "Hello,   World!",
    "it's a 3D-printed part",
    "don't stop",
    "12345 parts at 85.5C",
    "café thermal",
    "!!! ???",
    "tab\tand\nnewline",
    "thermal infrared image of a build plate",
]


def make_tokens():
    sys.path.insert(0, os.environ.get("OPEN_CLIP_DIR", "/tmp/oc"))
    from open_clip.tokenizer import SimpleTokenizer

    tok = SimpleTokenizer(os.path.join(HERE, "bpe_simple_vocab_16e6.txt.gz"))
    strings = list(EXTRA_STRINGS)
    for path in sorted(glob.glob(os.path.join(ROOT, "data", "banks", "*.txt"))):
        for line in open(path, encoding="utf-8"):
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("[") or ":" in line:
                continue
            strings.append(line)
    sot = tok.sot_token_id
    eot = tok.eot_token_id
    cases = [{"text": s, "ids": tok.encode(s)} for s in strings]
    with open(os.path.join(HERE, "token_ids.json"), "w", encoding="utf-8") as f:
        json.dump({"sot": sot, "eot": eot, "vocab_size": len(tok.encoder), "cases": cases}, f,
                  ensure_ascii=False, indent=1)
        f.write("\n")


def image_key(width, height, rgb):
    return hashlib.sha256(b"IRIS/image/v1\0" + struct.pack("<II", width, height) + bytes(rgb)).digest()


def text_key(text):
    return hashlib.sha256(b"IRIS/text/v1\0" + text.encode("utf-8")).digest()


def cache_bytes(dim, provider_id, entries):
    pid = provider_id.encode("utf-8")
    out = b"IRIS" + struct.pack("<III", 1, dim, len(pid)) + pid + struct.pack("<Q", len(entries))
    for key in sorted(entries):
        out += key + struct.pack("<%df" % dim, *entries[key])
    return out


def make_golden():
    img = (2, 1, [0, 0, 0, 255, 255, 255])
    texts = ["a photo", "", "café"]
    keys = {
        "image_2x1_black_white": image_key(*img).hex(),
        "image_1x1_rgb_1_2_3": image_key(1, 1, [1, 2, 3]).hex(),
    }
    for t in texts:
        keys["text:" + t] = text_key(t).hex()
    entries = {
        image_key(*img): [0.5, -0.25, 1.0, 0.0],
        text_key("a photo"): [1.0, 2.0, -3.0, 0.125],
    }
    with open(os.path.join(HERE, "golden.cache"), "wb") as f:
        f.write(cache_bytes(4, "golden", entries))
    doc = {
        "sha256_abc": hashlib.sha256(b"abc").hexdigest(),
        "keys": keys,
        "cache": {
            "dim": 4,
            "provider_id": "golden",
            "entries": [{"key": k.hex(), "vec": v} for k, v in sorted(entries.items())],
        },
    }
    with open(os.path.join(HERE, "golden.json"), "w", encoding="utf-8") as f:
        json.dump(doc, f, ensure_ascii=False, indent=1)
        f.write("\n")


if __name__ == "__main__":
    what = sys.argv[1:] or ["graphs", "tokens", "golden"]
    if "golden" in what:
        make_golden()
    if "graphs" in what:
        make_graphs()
    if "tokens" in what:
        make_tokens()
