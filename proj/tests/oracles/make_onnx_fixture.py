#!/usr/bin/env python3
"""Writes a tiny ONNX image encoder plus goldens for the runtime adapter tests.

Outputs (in OUT_DIR):
    tiny_encoder.onnx   conv -> relu -> global mean -> linear, D = 8
    tiny_encoder.json   sidecar metadata read by OnnxEmbeddingProvider
    prompts.emb         prompt embedding fixture for the default pairs
    golden.txt          <name> v1 ... v8 for the probe images below

Probe image `ramp`: R = (3x + 5y) mod 256, G = (7x + y) mod 256,
B = (x * y) mod 256 on a 224 x 224 grid. `flat`: every channel 128.
"""
import argparse
import pathlib

import numpy as np
import torch

D = 8
SIZE = 224
MEAN = [0.48145466, 0.4578275, 0.40821073]
STD = [0.26862954, 0.26130258, 0.27577711]
PROMPTS = ["high quality", "low quality", "a good photo", "a bad photo"]


class TinyEncoder(torch.nn.Module):
    def __init__(self):
        super().__init__()
        self.conv = torch.nn.Conv2d(3, 6, kernel_size=5, stride=4)
        self.fc = torch.nn.Linear(6, D)

    def forward(self, x):
        h = torch.relu(self.conv(x))
        return self.fc(h.mean(dim=(2, 3)))


def probe(name):
    y, x = np.mgrid[0:SIZE, 0:SIZE]
    if name == "ramp":
        rgb = np.stack([(3 * x + 5 * y) % 256, (7 * x + y) % 256, (x * y) % 256])
    else:
        rgb = np.full((3, SIZE, SIZE), 128)
    t = torch.tensor(rgb, dtype=torch.float32) / 255.0
    t = (t - torch.tensor(MEAN).view(3, 1, 1)) / torch.tensor(STD).view(3, 1, 1)
    return t.unsqueeze(0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir", type=pathlib.Path)
    args = ap.parse_args()
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)

    torch.manual_seed(7)
    model = TinyEncoder().eval()
    torch.onnx.export(model, probe("flat"), out / "tiny_encoder.onnx",
                      input_names=["pixels"], output_names=["embedding"],
                      opset_version=11, dynamo=False)

    (out / "tiny_encoder.json").write_text(
        '{\n  "dimension": %d,\n  "input_size": %d,\n  "mean": [%s],\n  "std": [%s],\n'
        '  "text_embeddings": "prompts.emb"\n}\n'
        % (D, SIZE, ", ".join(map(str, MEAN)), ", ".join(map(str, STD))))

    rng = np.random.default_rng(11)
    with open(out / "prompts.emb", "w") as f:
        f.write("# prompt embeddings for tiny_encoder.onnx\n")
        for p in PROMPTS:
            v = rng.standard_normal(D)
            f.write("%s %d %s\n" % (p.replace(" ", "_"), D, " ".join("%.7g" % e for e in v)))

    with torch.no_grad(), open(out / "golden.txt", "w") as f:
        for name in ("ramp", "flat"):
            v = model(probe(name))[0].numpy()
            f.write("%s %s\n" % (name, " ".join("%.9g" % e for e in v)))


if __name__ == "__main__":
    main()
