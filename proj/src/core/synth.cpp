// Copyright 2026 The wikiner Authors.
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

#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"

namespace wikiner {
namespace {

using json = nlohmann::json;

enum class Kind { kFood, kPerson, kPlace, kOrg, kBand };

struct Entity {
  Kind kind;
  std::string title;
  std::vector<std::string> surface;  // as written mid-sentence
  double weight = 1.0;               // mention frequency
  double link_probability = 0.6;
  std::string category;
};

class NamePool {
 public:
  explicit NamePool(Rng& rng) : rng_(rng) {}

  // A fresh pseudo-word built from the given syllable inventory.
  std::string Word(const std::vector<std::string>& onsets,
                   const std::vector<std::string>& vowels,
                   const std::vector<std::string>& codas, std::size_t syllables) {
    for (;;) {
      std::string w;
      for (std::size_t i = 0; i < syllables; ++i) {
        w += onsets[rng_.Below(onsets.size())];
        w += vowels[rng_.Below(vowels.size())];
      }
      w += codas[rng_.Below(codas.size())];
      if (used_.insert(w).second) return w;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

std::string Capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

const std::vector<std::string> kFoodOnsets = {"m", "l", "p", "b", "s", "t", "r"};
const std::vector<std::string> kFoodVowels = {"a", "o", "u", "ee", "oo"};
const std::vector<std::string> kFoodCodas = {"", "n", "l", "sh", "tto"};
const std::vector<std::string> kNameOnsets = {"K", "D", "V", "G", "Z", "H"};
const std::vector<std::string> kNameVowels = {"a", "e", "i", "o"};
const std::vector<std::string> kNameOnsetsLower = {"k", "d", "v", "g", "z", "h", "r"};
const std::vector<std::string> kNameCodas = {"", "r", "k", "x", "v"};
const std::vector<std::string> kPlaceCodas = {"burg", "dal", "wick", "stad", "mor"};
const std::vector<std::string> kOrgCodas = {"corp", "tek", "ion", "ware"};

const char* kFoodCategories[] = {"Fruits", "Vegetables", "Dishes", "Soups", "Beverages"};

// Template tokens: plain words or slots {F} food, {P} person, {L} place,
// {O} organization, {B} band.
const std::vector<std::string> kFoodTemplates = {
    "{P} cooked {F} with {F} for the guests .",
    "A bowl of {F} is served with {F} in {L} .",
    "The recipe combines {F} , {F} and a pinch of {F} .",
    "Farmers near {L} grow {F} for the local markets .",
    "{F} is a common ingredient in the cuisine of {L} .",
    "Many cooks in {L} use {F} instead of {F} .",
    "She tasted the {F} and praised its flavour .",
    "{O} sells dried {F} and fresh {F} .",
    "For breakfast {P} ate {F} with a cup of {F} .",
    "The soup is thickened with {F} and seasoned with {F} .",
    "Street vendors in {L} fry {F} in hot oil .",
    "{F} pairs well with roasted {F} .",
};
const std::vector<std::string> kBandTemplates = {
    "The band {B} played a concert in {L} last year .",
    "{B} released a new album with {P} .",
    "{P} joined {B} as a guitarist .",
    "Fans of {B} travelled to {L} for the tour .",
    "{B} signed a record deal with {O} .",
    "{B} toured with {B} and {B} across {L} .",
    "{B} shared the stage with {B} at the festival .",
};
const std::vector<std::string> kGenericTemplates = {
    "{P} was born in {L} and studied at {O} .",
    "{O} opened an office in {L} .",
    "{P} met {P} in {L} during the summer .",
    "{P} worked for {O} for many years .",
};
const std::vector<std::string> kLegacyFoodTemplates = {
    "{P} ate {F} in {L} on Sunday .",
    "{O} exported {F} to {L} .",
};

struct Rendered {
  std::vector<std::string> tokens;
  std::vector<SpanAnnotation> gold;  // fully annotated
  std::string wiki;                  // markup text
  std::size_t food_mentions = 0;
  std::size_t unlinked_food = 0;
};

class World {
 public:
  explicit World(const SynthConfig& config) : config_(config), rng_(config.seed) {
    inventory_ = ClassInventory::FromLists("PER,LOC,ORG", "FOOD");
    Populate();
  }

  SynthWorld Build() {
    SynthWorld out;
    out.inventory = inventory_;
    out.start_category = "Food and drink";
    out.ambiguous_aliases = bands_.size();

    // Dump sentences are spread over articles in round-robin order.
    std::vector<std::vector<std::string>> bodies(entities_.size());
    for (std::size_t i = 0; i < config_.sentences; ++i) {
      Rendered r = Render(SampleTemplate(config_.food_share, config_.homonym_share), true);
      out.food_mentions += r.food_mentions;
      out.unlinked_food_mentions += r.unlinked_food;
      bodies[rng_.Below(entities_.size())].push_back(r.wiki);
    }

    std::ostringstream dump;
    auto category = [&](const std::string& title, const std::string& parent) {
      json j{{"kind", "category"}, {"title", title}};
      if (!parent.empty()) j["parent"] = parent;
      dump << j.dump() << '\n';
    };
    category("Food and drink", "");
    for (const char* c : kFoodCategories) {
      category(c, c == std::string("Soups") ? "Dishes" : "Food and drink");
    }
    category("Food and drink", "Soups");  // cycle back to the root
    category("Culture", "");
    category("Music", "Culture");
    category("Bands", "Music");
    category("People", "Culture");
    category("Places", "");
    category("Companies", "");
    for (std::size_t i = 0; i < entities_.size(); ++i) {
      const Entity& e = entities_[i];
      std::string text = "'''" + e.title + "''' is an article .";
      for (const auto& s : bodies[i]) text += " " + s;
      text += " [[Category:" + e.category + "]]";
      dump << json{{"kind", "article"}, {"title", e.title}, {"text", text}}.dump() << '\n';
    }
    out.dump = dump.str();

    for (std::size_t i = 0; i < config_.gold_sentences; ++i) {
      const double alias_share = config_.food_share + config_.homonym_share;
      Rendered r = Render(SampleTemplate(config_.food_share / alias_share, config_.homonym_share / alias_share), false);
      out.gold.push_back(MakeSentence(r.tokens, r.gold, inventory_, "gold#" + std::to_string(i)));
    }

    // Legacy corpus: no FOOD class, so food mentions stay O.
    std::vector<Sentence> legacy;
    for (std::size_t i = 0; i < config_.legacy_sentences; ++i) {
      const bool food = rng_.Uniform() < 0.25;
      const auto& pool = food ? kLegacyFoodTemplates : kGenericTemplates;
      Rendered r = Render(pool[rng_.Below(pool.size())], false);
      std::vector<SpanAnnotation> spans;
      const std::size_t food_class = inventory_.ClassIndex("FOOD");
      for (const auto& s : r.gold) {
        if (s.classes[0] != food_class) spans.push_back(s);
      }
      legacy.push_back(MakeSentence(r.tokens, spans, inventory_));
    }
    const std::size_t n_dev = legacy.size() * 15 / 100;
    const std::size_t n_train = legacy.size() - 2 * n_dev;
    out.legacy_train.assign(legacy.begin(), legacy.begin() + n_train);
    out.legacy_dev.assign(legacy.begin() + n_train, legacy.begin() + n_train + n_dev);
    out.legacy_test.assign(legacy.begin() + n_train + n_dev, legacy.end());

    std::ostringstream gaz;
    for (const auto& e : entities_) {
      if (e.kind == Kind::kFood) continue;
      if (rng_.Uniform() >= config_.gazetteer_coverage) continue;
      gaz << ClassName(e.kind) << '\t' << Join(e.surface, " ") << '\n';
    }
    out.gazetteer = gaz.str();
    return out;
  }

 private:
  static const char* ClassName(Kind k) {
    switch (k) {
      case Kind::kPerson: return "PER";
      case Kind::kPlace: return "LOC";
      case Kind::kOrg:
      case Kind::kBand: return "ORG";
      case Kind::kFood: return "FOOD";
    }
    return "O";
  }

  void Populate() {
    NamePool names(rng_);
    for (std::size_t i = 0; i < config_.foods; ++i) {
      Entity e{Kind::kFood, {}, {}, 1.0, 0.0, kFoodCategories[i % 5]};
      e.surface.push_back(names.Word(kFoodOnsets, kFoodVowels, kFoodCodas, 1 + rng_.Below(2)));
      if (rng_.Uniform() < 0.3) {
        e.surface.push_back(names.Word(kFoodOnsets, kFoodVowels, kFoodCodas, 1 + rng_.Below(2)));
      }
      e.title = Capitalize(Join(e.surface, " "));
      foods_.push_back(entities_.size());
      entities_.push_back(std::move(e));
    }
    // Zipf-like frequencies; common terms are rarely linked.
    CalibrateFoodLinks();

    const auto n_bands = static_cast<std::size_t>(std::llround(config_.foods * config_.ambiguous_fraction));
    std::vector<std::size_t> single;
    for (std::size_t f : foods_) {
      if (entities_[f].surface.size() == 1) single.push_back(f);
    }
    rng_.Shuffle(single);
    for (std::size_t i = 0; i < n_bands && i < single.size(); ++i) {
      const Entity& food = entities_[single[i]];
      Entity b{Kind::kBand, food.title + " (band)", {food.title}, 1.0, 0.6, "Bands"};
      bands_.push_back(entities_.size());
      entities_.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < config_.people; ++i) {
      Entity e{Kind::kPerson, {}, {}, 1.0, 0.6, "People"};
      e.surface.push_back(names.Word(kNameOnsets, kNameVowels, kNameCodas, 1));
      e.surface.push_back(Capitalize(names.Word(kNameOnsetsLower, kNameVowels, kNameCodas, 2)));
      e.title = Join(e.surface, " ");
      people_.push_back(entities_.size());
      entities_.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < config_.places; ++i) {
      Entity e{Kind::kPlace, {}, {}, 1.0, 0.6, "Places"};
      e.surface.push_back(names.Word(kNameOnsets, kNameVowels, kPlaceCodas, 1));
      e.title = e.surface[0];
      places_.push_back(entities_.size());
      entities_.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < config_.organizations; ++i) {
      Entity e{Kind::kOrg, {}, {}, 1.0, 0.6, "Companies"};
      e.surface.push_back(names.Word(kNameOnsets, kNameVowels, kOrgCodas, 1));
      if (rng_.Uniform() < 0.5) e.surface.push_back("Group");
      e.title = Join(e.surface, " ");
      orgs_.push_back(entities_.size());
      entities_.push_back(std::move(e));
    }
  }

  // Food i has weight 1/(i+1); link probability decreases linearly in log
  // frequency from 0.95 (rarest) to p_min (most common). p_min is found by
  // bisection so that the expected unlinked share of mentions matches.
  void CalibrateFoodLinks() {
    const std::size_t n = foods_.size();
    double total = 0;
    std::vector<double> w(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 1.0 / static_cast<double>(i + 1);
      t[i] = n > 1 ? 1.0 - std::log(static_cast<double>(i + 1)) / std::log(static_cast<double>(n)) : 0.0;
      total += w[i];
    }
    auto unlinked = [&](double p_min) {
      double u = 0;
      for (std::size_t i = 0; i < n; ++i) u += w[i] * (1.0 - (0.95 + (p_min - 0.95) * t[i]));
      return u / total;
    };
    double lo = 0.0, hi = 0.95;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (unlinked(mid) > config_.unlinked_fraction ? lo : hi) = mid;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Entity& e = entities_[foods_[i]];
      e.weight = w[i];
      e.link_probability = 0.95 + (lo - 0.95) * t[i];
    }
  }

  std::size_t PickFood() {
    double total = 0;
    for (std::size_t f : foods_) total += entities_[f].weight;
    double r = rng_.Uniform() * total;
    for (std::size_t f : foods_) {
      r -= entities_[f].weight;
      if (r < 0) return f;
    }
    return foods_.back();
  }

  std::size_t PickFrom(const std::vector<std::size_t>& pool) { return pool[rng_.Below(pool.size())]; }

  const std::string& SampleTemplate(double food_share, double band_share) {
    const double u = rng_.Uniform();
    const auto& pool = u < food_share ? kFoodTemplates
                       : u < food_share + band_share ? kBandTemplates
                                                     : kGenericTemplates;
    return pool[rng_.Below(pool.size())];
  }

  Rendered Render(const std::string& pattern, bool with_links) {
    Rendered r;
    std::vector<std::string> markup;
    for (const auto view : SplitWhitespace(pattern)) {
      const std::string piece(view);
      if (piece.size() != 3 || piece[0] != '{') {
        r.tokens.push_back(piece);
        markup.push_back(piece);
        continue;
      }
      std::size_t id = 0;
      switch (piece[1]) {
        case 'F': id = PickFood(); break;
        case 'P': id = PickFrom(people_); break;
        case 'L': id = PickFrom(places_); break;
        case 'O': id = PickFrom(orgs_); break;
        default: id = PickFrom(bands_); break;
      }
      const Entity& e = entities_[id];
      std::vector<std::string> surface = e.surface;
      if (r.tokens.empty()) surface[0] = Capitalize(surface[0]);
      const std::size_t start = r.tokens.size();
      r.tokens.insert(r.tokens.end(), surface.begin(), surface.end());
      r.gold.push_back(SpanAnnotation::Positive(start, r.tokens.size(),
                                                inventory_.ClassIndex(ClassName(e.kind))));
      const std::string text = Join(surface, " ");
      const bool linked = with_links && rng_.Uniform() < e.link_probability;
      if (e.kind == Kind::kFood) {
        ++r.food_mentions;
        if (!linked) ++r.unlinked_food;
      }
      if (!linked) {
        markup.push_back(text);
      } else if (text == e.title) {
        markup.push_back("[[" + text + "]]");
      } else {
        markup.push_back("[[" + e.title + "|" + text + "]]");
      }
    }
    r.wiki = Join(markup, " ");
    return r;
  }

  SynthConfig config_;
  Rng rng_;
  ClassInventory inventory_;
  std::vector<Entity> entities_;
  std::vector<std::size_t> foods_, bands_, people_, places_, orgs_;
};

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

// Plain CoNLL 2003 layout with placeholder POS/chunk columns and IOB1 tags.
std::string PlainConll(const std::vector<Sentence>& sentences, const ClassInventory& inv) {
  std::ostringstream out;
  out << "-DOCSTART- -X- -X- O\n\n";
  for (const auto& s : sentences) {
    std::size_t prev = ClassInventory::kOutside;
    for (const auto& t : s.tokens) {
      std::string tag = "O";
      if (t.gold_label != ClassInventory::kOutside) {
        const std::size_t cls = ClassInventory::ClassOfLabel(t.gold_label);
        const bool adjacent_same = prev != ClassInventory::kOutside &&
                                   ClassInventory::ClassOfLabel(prev) == cls;
        const bool begin = ClassInventory::IsBegin(t.gold_label) && adjacent_same;
        tag = std::string(begin ? "B-" : "I-") + inv.classes()[cls].name;
      }
      out << t.text << " NNP I-NP " << tag << '\n';
      prev = t.gold_label;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

SynthWorld GenerateWorld(const SynthConfig& config) {
  if (config.sentences == 0 || config.foods < 2 || config.people == 0 || config.places == 0 ||
      config.organizations == 0) {
    Fail(ErrorCode::kInvalidArgument, "synthetic world needs sentences and entities of every class");
  }
  if (config.ambiguous_fraction < 0 || config.ambiguous_fraction > 1 ||
      config.unlinked_fraction < 0 || config.unlinked_fraction > 0.9 || config.food_share <= 0 ||
      config.homonym_share < 0 || config.food_share + config.homonym_share > 1) {
    Fail(ErrorCode::kInvalidArgument, "synthetic rates out of range");
  }
  if (config.ambiguous_fraction * static_cast<double>(config.foods) < 0.5) {
    Fail(ErrorCode::kInvalidArgument, "ambiguous fraction leaves no band homonyms");
  }
  return World(config).Build();
}

void WriteWorld(const SynthWorld& world, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
  const fs::path root(dir);
  WriteText(root / "dump.jsonl", world.dump);
  WriteConllFile(world.gold, (root / "gold.conll").string(), world.inventory);
  WriteText(root / "legacy_train.conll", PlainConll(world.legacy_train, world.inventory));
  WriteText(root / "legacy_dev.conll", PlainConll(world.legacy_dev, world.inventory));
  WriteText(root / "legacy_test.conll", PlainConll(world.legacy_test, world.inventory));
  WriteText(root / "gazetteer.tsv", world.gazetteer);
  WriteText(root / "inventory.txt", world.inventory.Serialize() + "\n");
}

}  // namespace wikiner
