#include "aitlab/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "aitlab/errors.hpp"

namespace aitlab {

void HypothesisSpace::validate() const {
  if (hypotheses.empty()) throw ConfigError("hypotheses: empty");
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (hypotheses[i].empty())
      throw ConfigError("hypotheses[" + std::to_string(i) + "]: empty name");
    for (std::size_t j = i + 1; j < hypotheses.size(); ++j)
      if (hypotheses[i] == hypotheses[j])
        throw ConfigError("hypotheses: duplicate name " + hypotheses[i]);
  }
  if (prior.size() != hypotheses.size())
    throw ConfigError("prior: " + std::to_string(prior.size()) +
                      " entries for " + std::to_string(hypotheses.size()) +
                      " hypotheses");
  double sum = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (!(prior[i] >= 0.0))
      throw ConfigError("prior[" + hypotheses[i] + "]: negative or NaN");
    sum += prior[i];
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw ConfigError("prior: sums to " + std::to_string(sum));
  for (const auto& [event, row] : likelihood) {
    if (event.empty()) throw ConfigError("likelihood: empty event name");
    if (row.size() != hypotheses.size())
      throw ConfigError("likelihood[" + event + "]: " +
                        std::to_string(row.size()) + " entries for " +
                        std::to_string(hypotheses.size()) + " hypotheses");
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!(row[i] >= 0.0) || row[i] > 1.0)
        throw ConfigError("likelihood[" + event + "][" + hypotheses[i] +
                          "]: outside [0,1]");
  }
}

HypothesisSpace load_hypothesis_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  HypothesisSpace space;
  try {
    j.at("hypotheses").get_to(space.hypotheses);
    j.at("prior").get_to(space.prior);
    for (const auto& [event, row] : j.at("likelihood").items())
      space.likelihood[event] = row.get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  try {
    space.validate();
  } catch (const ConfigError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return space;
}

std::vector<double> posterior(const HypothesisSpace& space,
                              const std::vector<double>& prior,
                              const std::string& event, std::size_t step) {
  auto it = space.likelihood.find(event);
  if (it == space.likelihood.end())
    throw ConfigError("unknown event " + event);
  if (prior.size() != space.hypotheses.size())
    throw ConfigError("prior: " + std::to_string(prior.size()) +
                      " entries for " +
                      std::to_string(space.hypotheses.size()) +
                      " hypotheses");
  const std::vector<double>& row = it->second;
  double marginal = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i)
    marginal += prior[i] * row[i];
  if (marginal <= 0.0)
    throw ImpossibleEvidence(
        step, "event " + event + " has zero probability at step " +
                  std::to_string(step));
  std::vector<double> post(prior.size());
  for (std::size_t i = 0; i < prior.size(); ++i)
    post[i] = prior[i] * row[i] / marginal;
  return post;
}

UpdateTrace sequential_update(const HypothesisSpace& space,
                              const std::vector<std::string>& events) {
  space.validate();
  UpdateTrace trace;
  std::vector<double> belief = space.prior;
  for (std::size_t n = 0; n < events.size(); ++n) {
    UpdateStep st;
    st.event = events[n];
    std::vector<double> post = posterior(space, belief, events[n], n);
    const std::vector<double>& row = space.likelihood.at(events[n]);
    for (std::size_t i = 0; i < belief.size(); ++i)
      st.marginal += belief[i] * row[i];
    st.drop.resize(belief.size());
    for (std::size_t i = 0; i < belief.size(); ++i)
      st.drop[i] = belief[i] - post[i];
    st.posterior = post;
    belief = std::move(post);
    trace.steps.push_back(std::move(st));
  }
  trace.final = belief;
  return trace;
}

ProgramPosterior program_posterior(const ProgramTable& table,
                                   const BitString& z) {
  if (!table.with_programs)
    throw ConfigError("table was built without program collection");
  ProgramPosterior pp;
  pp.z = z;
  std::uint32_t L = table.params.max_program_bits;
  for (const auto& [output, rec] : table.records) {
    if (!z.is_prefix_of(output)) continue;
    pp.den += rec.mass.numerator;
    if (output.size() == z.size())
      pp.defect_num += rec.mass.numerator;
    else if (output.bit(z.size()) == 0)
      pp.num0 += rec.mass.numerator;
    else
      pp.num1 += rec.mass.numerator;
    for (const BitString& p : rec.programs)
      pp.entries.push_back(
          {p, output, std::uint64_t{1} << (L - p.size())});
  }
  if (pp.den == 0)
    throw NoSupportError("no halting mass extends " +
                         (z.empty() ? std::string("(empty)") : z.str()));
  std::sort(pp.entries.begin(), pp.entries.end(),
            [](const ProgramWeight& a, const ProgramWeight& b) {
              return a.program < b.program;
            });
  return pp;
}

}  // namespace aitlab
