#include "aitlab/predictor.hpp"

#include <cmath>
#include <cstdio>

#include "aitlab/errors.hpp"

namespace aitlab {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double Prediction::p0() const { return ratio(num0, den); }
double Prediction::p1() const { return ratio(num1, den); }
double Prediction::defect() const { return ratio(defect_num, den); }

PredictiveModel::PredictiveModel(std::shared_ptr<const ProgramTable> table)
    : table_(std::move(table)) {
  if (!table_) throw ConfigError("predictive model needs a table");
  for (const auto& [output, rec] : table_->records) {
    for (std::size_t i = 0; i <= output.size(); ++i)
      prefix_mass_[output.prefix(i)] += rec.mass.numerator;
  }
}

std::uint64_t PredictiveModel::extension_mass(const BitString& s) const {
  auto it = prefix_mass_.find(s);
  return it == prefix_mass_.end() ? 0 : it->second;
}

Prediction PredictiveModel::predict(const BitString& context) const {
  Prediction p;
  p.den = extension_mass(context);
  if (p.den == 0)
    throw NoSupportError("no halting mass extends context " +
                         (context.empty() ? std::string("(empty)")
                                          : context.str()));
  p.num0 = extension_mass(context.extended(0));
  p.num1 = extension_mass(context.extended(1));
  p.defect_num = p.den - p.num0 - p.num1;
  return p;
}

SequentialReport PredictiveModel::sequential_report(
    const BitString& stream) const {
  SequentialReport rep;
  rep.stream = stream;
  rep.rows.reserve(stream.size());
  bool scoring = true;
  long double cum = 0.0L;
  for (std::size_t pos = 0; pos < stream.size(); ++pos) {
    SequentialRow row;
    row.pos = pos;
    row.observed = stream.bit(pos);
    BitString context = stream.prefix(pos);
    std::uint64_t den = extension_mass(context);
    if (den > 0) {
      row.supported = true;
      row.pred.den = den;
      row.pred.num0 = extension_mass(context.extended(0));
      row.pred.num1 = extension_mass(context.extended(1));
      row.pred.defect_num = den - row.pred.num0 - row.pred.num1;
      std::uint64_t num_obs = row.observed ? row.pred.num1 : row.pred.num0;
      if (scoring && num_obs > 0) {
        cum += std::log2(static_cast<long double>(den)) -
               std::log2(static_cast<long double>(num_obs));
        row.scored = true;
        rep.scored_positions += 1;
      } else {
        scoring = false;
      }
    } else {
      scoring = false;
    }
    row.logloss_cum = static_cast<double>(cum);
    rep.rows.push_back(row);
  }
  rep.logloss_total = static_cast<double>(cum);
  return rep;
}

void write_sequential_csv(std::ostream& os, const SequentialReport& report) {
  os << "pos,observed,p0,p1,defect,logloss_cum,scored\n";
  for (const SequentialRow& row : report.rows) {
    os << row.pos << ',' << row.observed << ',';
    if (row.supported)
      os << fmt(row.pred.p0()) << ',' << fmt(row.pred.p1()) << ','
         << fmt(row.pred.defect()) << ',';
    else
      os << ",,,";
    if (row.scored) os << fmt(row.logloss_cum);
    os << ',' << (row.scored ? 1 : 0) << '\n';
  }
}

}  // namespace aitlab
