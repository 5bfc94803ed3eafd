#include "motifperc/esu.hpp"

namespace motifperc {

std::vector<MotifInstance> esu_collect(const WindowGraph& g,
                                       const PatternClassifier& classifier, int k) {
    std::vector<MotifInstance> out;
    esu_enumerate(g, classifier, k, [&](const MotifInstance& m) { out.push_back(m); });
    return out;
}

std::map<int, std::vector<MotifInstance>> instances_by_pattern(
    const WindowGraph& g, const PatternClassifier& classifier, int k) {
    std::map<int, std::vector<MotifInstance>> out;
    esu_enumerate(g, classifier, k,
                  [&](const MotifInstance& m) { out[m.pattern].push_back(m); });
    return out;
}

}  // namespace motifperc
