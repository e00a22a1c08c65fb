#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "spacenet/core/message.hpp"
#include "spacenet/core/types.hpp"

namespace spacenet {

enum class SegmentType : std::uint8_t { Data, Report, ReportAck };
enum class SegmentColor : std::uint8_t { Green, Red };

using UidList = std::vector<Uid>;

struct LtpSegment {
    SegmentType type = SegmentType::Data;
    Uid uid = 0;
    Uid session = 0;
    NodeId sender = 0;    // session sender (data side)
    NodeId receiver = 0;  // session receiver
    std::uint64_t bits = 0;

    // Data segments
    SegmentColor color = SegmentColor::Red;
    bool end_of_green_block = false;
    Uid checkpoint_serial = 0;  // nonzero iff checkpoint
    std::shared_ptr<const UidList> manifest;
    std::shared_ptr<const Message> message;
    std::uint32_t green_count = 0;

    // Reports answer checkpoint_serial and are identified by their uid; acks name the report they confirm.
    Uid report_serial = 0;
    std::vector<Uid> received;

    bool is_checkpoint() const { return type == SegmentType::Data && checkpoint_serial != 0; }
};

}  // namespace spacenet
