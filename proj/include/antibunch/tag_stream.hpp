// Time-tagged detection records. All timestamps are integer picoseconds;
// no floating-point time anywhere downstream.

#pragma once

#include <cstdint>
#include <vector>

namespace antibunch {

struct TagRecord {
    uint64_t timestamp_ps;
    uint32_t channel;
};

struct TagStream {
    std::vector<TagRecord> records;  // sorted by timestamp
    uint64_t duration_ps = 0;

    bool sorted() const {
        for (size_t i = 1; i < records.size(); ++i) {
            if (records[i].timestamp_ps < records[i - 1].timestamp_ps) return false;
        }
        return true;
    }
};

}  // namespace antibunch
