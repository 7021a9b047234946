#pragma once

namespace ivx {

// Ordered truncation pair. Validity against a model or a sample (positive
// mass between the endpoints) is checked by the consuming module.
struct Window {
  double t1;
  double t2;

  bool ordered() const { return t1 < t2; }
};

}  // namespace ivx
