// Copyright 2026 The Tempex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEMPEX_MAXENT_HPP_
#define TEMPEX_MAXENT_HPP_

// Multinomial maximum-entropy (softmax) classifier over categorical
// features. Training maximizes the L2-penalized conditional log-likelihood
// by batch gradient ascent with a backtracking (Armijo) line search:
// deterministic, zero-initialized, no randomness. An always-on bias feature
// per label is added implicitly and left unpenalized so the model can
// express the label prior.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tempex/errors.hpp"

namespace tempex {

// A categorical feature vector: ordered (name, value) pairs with unique
// names. The active feature keys are "name=value" strings.
struct FeatureVector {
  std::vector<std::pair<std::string, std::string>> features;

  void add(std::string name, std::string value) {
    features.emplace_back(std::move(name), std::move(value));
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    out.reserve(features.size());
    for (const auto& [name, value] : features) {
      out.push_back(name + "=" + value);
    }
    return out;
  }
};

struct TrainingConfig {
  int max_iterations = 200;
  double convergence_tol = 1e-6;  // relative log-likelihood change
  double l2_sigma2 = 1.0;         // Gaussian prior variance
};

// Per-iteration diagnostics from train().
struct TrainingTrace {
  std::vector<double> log_likelihood;  // penalized objective after each step
  double final_gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

class MaxEntModel {
 public:
  static constexpr const char* kBiasFeature = "__bias__";

  MaxEntModel() = default;
  MaxEntModel(std::vector<std::string> labels, std::string schema_version,
              double sigma2)
      : labels_(std::move(labels)),
        schema_version_(std::move(schema_version)),
        sigma2_(sigma2),
        bias_(labels_.size(), 0.0) {
    if (labels_.empty()) throw ValidationError("model needs at least 1 label");
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& schema_version() const { return schema_version_; }
  double sigma2() const { return sigma2_; }

  std::vector<double>& weights_for(const std::string& feature_key) {
    auto [it, inserted] = weights_.try_emplace(
        feature_key, std::vector<double>(labels_.size(), 0.0));
    if (inserted) feature_order_.push_back(feature_key);
    return it->second;
  }

  const std::vector<double>* find_weights(const std::string& feature_key) const {
    auto it = weights_.find(feature_key);
    return it == weights_.end() ? nullptr : &it->second;
  }

  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& bias() const { return bias_; }

  // Feature keys in first-seen order; serialization and iteration use this
  // so outputs are reproducible.
  const std::vector<std::string>& feature_order() const {
    return feature_order_;
  }

  // Unnormalized log scores for every label.
  std::vector<double> scores(const FeatureVector& vector) const {
    std::vector<double> s = bias_;
    for (const std::string& key : vector.keys()) {
      if (const std::vector<double>* w = find_weights(key)) {
        for (size_t l = 0; l < s.size(); ++l) s[l] += (*w)[l];
      }
    }
    return s;
  }

 private:
  std::vector<std::string> labels_;
  std::string schema_version_;
  double sigma2_ = 1.0;
  std::vector<double> bias_;
  std::unordered_map<std::string, std::vector<double>> weights_;
  std::vector<std::string> feature_order_;
};

namespace detail {

inline std::vector<double> softmax(std::vector<double> scores) {
  double max = scores[0];
  for (double s : scores) {
    if (s > max) max = s;
  }
  double sum = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max);
    sum += s;
  }
  for (double& s : scores) s /= sum;
  return scores;
}

}  // namespace detail

// p(label | vector) under the model. Unseen feature values contribute
// nothing; probabilities sum to 1.
inline std::map<std::string, double> predict_distribution(
    const MaxEntModel& model, const FeatureVector& vector) {
  std::vector<double> probs = detail::softmax(model.scores(vector));
  std::map<std::string, double> out;
  for (size_t l = 0; l < model.labels().size(); ++l) {
    out[model.labels()[l]] = probs[l];
  }
  return out;
}

// Argmax label; ties break toward the earlier label in model order.
inline std::string predict(const MaxEntModel& model,
                           const FeatureVector& vector) {
  std::vector<double> probs = detail::softmax(model.scores(vector));
  size_t best = 0;
  for (size_t l = 1; l < probs.size(); ++l) {
    if (probs[l] > probs[best]) best = l;
  }
  return model.labels()[best];
}

using TrainingExample = std::pair<FeatureVector, std::string>;

namespace detail {

// Dense training problem: examples as active-feature index lists. Index 0 is
// the implicit bias, active in every example and exempt from the L2 penalty.
struct MaxEntProblem {
  std::vector<std::string> labels;
  std::vector<std::string> feature_keys;  // [0] == bias
  std::vector<std::vector<int>> activations;
  std::vector<int> targets;
  double sigma2 = 1.0;

  size_t num_labels() const { return labels.size(); }
  size_t num_features() const { return feature_keys.size(); }

  double& weight(std::vector<double>& w, size_t f, size_t l) const {
    return w[f * num_labels() + l];
  }
  double weight(const std::vector<double>& w, size_t f, size_t l) const {
    return w[f * num_labels() + l];
  }

  // Penalized conditional log-likelihood.
  double objective(const std::vector<double>& w) const {
    double ll = 0.0;
    std::vector<double> scores(num_labels());
    for (size_t i = 0; i < activations.size(); ++i) {
      label_scores(w, activations[i], scores);
      double max = scores[0];
      for (double s : scores) {
        if (s > max) max = s;
      }
      double sum = 0.0;
      for (double s : scores) sum += std::exp(s - max);
      ll += scores[static_cast<size_t>(targets[i])] - max - std::log(sum);
    }
    for (size_t f = 1; f < num_features(); ++f) {
      for (size_t l = 0; l < num_labels(); ++l) {
        double v = weight(w, f, l);
        ll -= v * v / (2.0 * sigma2);
      }
    }
    return ll;
  }

  // Gradient of the objective with respect to every weight.
  std::vector<double> gradient(const std::vector<double>& w) const {
    std::vector<double> grad(w.size(), 0.0);
    std::vector<double> scores(num_labels());
    for (size_t i = 0; i < activations.size(); ++i) {
      label_scores(w, activations[i], scores);
      std::vector<double> probs = softmax(scores);
      for (size_t l = 0; l < num_labels(); ++l) {
        double delta =
            (static_cast<int>(l) == targets[i] ? 1.0 : 0.0) - probs[l];
        grad[0 * num_labels() + l] += delta;
        for (int f : activations[i]) {
          grad[static_cast<size_t>(f) * num_labels() + l] += delta;
        }
      }
    }
    for (size_t f = 1; f < num_features(); ++f) {
      for (size_t l = 0; l < num_labels(); ++l) {
        grad[f * num_labels() + l] -= weight(w, f, l) / sigma2;
      }
    }
    return grad;
  }

 private:
  void label_scores(const std::vector<double>& w,
                    const std::vector<int>& active,
                    std::vector<double>& scores) const {
    for (size_t l = 0; l < num_labels(); ++l) scores[l] = weight(w, 0, l);
    for (int f : active) {
      for (size_t l = 0; l < num_labels(); ++l) {
        scores[l] += weight(w, static_cast<size_t>(f), l);
      }
    }
  }
};

inline MaxEntProblem build_problem(const std::vector<TrainingExample>& data,
                                   double sigma2) {
  MaxEntProblem problem;
  problem.sigma2 = sigma2;
  problem.feature_keys.push_back(MaxEntModel::kBiasFeature);
  std::unordered_map<std::string, int> label_index;
  std::unordered_map<std::string, int> feature_index;
  for (const auto& [vector, label] : data) {
    auto [lit, linserted] =
        label_index.try_emplace(label, static_cast<int>(problem.labels.size()));
    if (linserted) problem.labels.push_back(label);
    problem.targets.push_back(lit->second);
    std::vector<int> active;
    for (const std::string& key : vector.keys()) {
      auto [fit, finserted] = feature_index.try_emplace(
          key, static_cast<int>(problem.feature_keys.size()));
      if (finserted) problem.feature_keys.push_back(key);
      active.push_back(fit->second);
    }
    problem.activations.push_back(std::move(active));
  }
  return problem;
}

}  // namespace detail

// Trains by gradient ascent with backtracking line search on the penalized
// conditional log-likelihood. Deterministic: weights start at zero, labels
// and features are indexed in first-seen order. Converged means the gradient
// norm fell below 1e-4 * (1 + #examples).
inline MaxEntModel train(const std::vector<TrainingExample>& data,
                         const TrainingConfig& config,
                         const std::string& schema_version = "",
                         TrainingTrace* trace = nullptr) {
  if (data.empty()) throw ValidationError("training data must be non-empty");

  detail::MaxEntProblem problem = detail::build_problem(data, config.l2_sigma2);
  const size_t dim = problem.num_features() * problem.num_labels();
  std::vector<double> w(dim, 0.0);

  const double grad_target =
      1e-4 * (1.0 + static_cast<double>(data.size()));
  const double armijo_c = 1e-4;

  double objective = problem.objective(w);
  double step = 1.0;
  double gnorm = 0.0;
  bool converged = false;
  int iter = 0;
  if (trace) trace->log_likelihood.push_back(objective);

  for (; iter < config.max_iterations; ++iter) {
    std::vector<double> grad = problem.gradient(w);
    double gsq = 0.0;
    for (double g : grad) gsq += g * g;
    gnorm = std::sqrt(gsq);
    if (gnorm <= grad_target) {
      converged = true;
      break;
    }

    // Backtracking line search along the gradient direction.
    std::vector<double> candidate(dim);
    double next_objective = objective;
    bool first_try = true;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (size_t k = 0; k < dim; ++k) candidate[k] = w[k] + step * grad[k];
      next_objective = problem.objective(candidate);
      if (next_objective >= objective + armijo_c * step * gsq) break;
      step *= 0.5;
      first_try = false;
    }
    if (next_objective < objective) break;  // no ascent step found
    w.swap(candidate);
    double change = std::abs(next_objective - objective) /
                    (1.0 + std::abs(objective));
    objective = next_objective;
    if (trace) trace->log_likelihood.push_back(objective);
    if (first_try) step *= 2.0;
    if (change < config.convergence_tol) {
      std::vector<double> g2 = problem.gradient(w);
      double s = 0.0;
      for (double g : g2) s += g * g;
      gnorm = std::sqrt(s);
      converged = gnorm <= grad_target;
      break;
    }
  }

  if (trace) {
    trace->final_gradient_norm = gnorm;
    trace->iterations = iter;
    trace->converged = converged;
  }

  MaxEntModel model(problem.labels, schema_version, config.l2_sigma2);
  for (size_t l = 0; l < problem.num_labels(); ++l) {
    model.bias()[l] = problem.weight(w, 0, l);
  }
  for (size_t f = 1; f < problem.num_features(); ++f) {
    std::vector<double>& out = model.weights_for(problem.feature_keys[f]);
    for (size_t l = 0; l < problem.num_labels(); ++l) {
      out[l] = problem.weight(w, f, l);
    }
  }
  return model;
}

// Versioned text format; weights carry 17 significant digits so that a
// loaded model predicts bit-exactly.
inline void save_model(const MaxEntModel& model, std::ostream& out) {
  out << "tempex-maxent v1\n";
  out << "schema\t" << model.schema_version() << "\n";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", model.sigma2());
  out << "sigma2\t" << buf << "\n";
  out << "labels";
  for (const auto& label : model.labels()) out << "\t" << label;
  out << "\n";
  auto emit = [&](const std::string& feature, const std::vector<double>& w) {
    for (size_t l = 0; l < model.labels().size(); ++l) {
      std::snprintf(buf, sizeof(buf), "%.17g", w[l]);
      out << feature << "\t" << model.labels()[l] << "\t" << buf << "\n";
    }
  };
  emit(MaxEntModel::kBiasFeature, model.bias());
  for (const std::string& key : model.feature_order()) {
    emit(key, *model.find_weights(key));
  }
}

// Loads a model saved by save_model. When expected_schema is non-empty, a
// differing stored schema version is an error.
inline MaxEntModel load_model(std::istream& in,
                              const std::string& expected_schema = "") {
  std::string line;
  if (!std::getline(in, line) || line != "tempex-maxent v1") {
    throw ParseError("not a tempex-maxent v1 model file");
  }
  auto field = [&](const char* name) {
    if (!std::getline(in, line)) {
      throw ParseError(std::string("model file truncated before ") + name);
    }
    size_t tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != name) {
      throw ParseError(std::string("expected '") + name + "' line");
    }
    return line.substr(tab + 1);
  };
  std::string schema = field("schema");
  if (!expected_schema.empty() && schema != expected_schema) {
    throw ValidationError("model schema version '" + schema +
                          "' does not match expected '" + expected_schema +
                          "'");
  }
  double sigma2 = std::strtod(field("sigma2").c_str(), nullptr);
  if (!(sigma2 > 0.0)) throw ParseError("sigma2 must be positive");

  if (!std::getline(in, line) || line.rfind("labels\t", 0) != 0) {
    throw ParseError("expected 'labels' line");
  }
  std::vector<std::string> labels;
  {
    std::string rest = line.substr(7);
    size_t pos = 0;
    while (true) {
      size_t tab = rest.find('\t', pos);
      labels.push_back(rest.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
  }
  MaxEntModel model(labels, schema, sigma2);

  int lineno = 4;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t tab1 = line.find('\t');
    size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                            : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw ParseError("model line " + std::to_string(lineno) +
                       ": expected feature<TAB>label<TAB>weight");
    }
    std::string feature = line.substr(0, tab1);
    std::string label = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const char* weight_text = line.c_str() + tab2 + 1;
    char* end = nullptr;
    double weight = std::strtod(weight_text, &end);
    if (end == weight_text || *end != '\0') {
      throw ParseError("model line " + std::to_string(lineno) +
                       ": bad weight '" + std::string(weight_text) + "'");
    }
    size_t label_idx = labels.size();
    for (size_t l = 0; l < labels.size(); ++l) {
      if (labels[l] == label) {
        label_idx = l;
        break;
      }
    }
    if (label_idx == labels.size()) {
      throw ParseError("model line " + std::to_string(lineno) +
                       ": unknown label '" + label + "'");
    }
    if (feature == MaxEntModel::kBiasFeature) {
      model.bias()[label_idx] = weight;
    } else {
      model.weights_for(feature)[label_idx] = weight;
    }
  }
  return model;
}

}  // namespace tempex

#endif  // TEMPEX_MAXENT_HPP_
