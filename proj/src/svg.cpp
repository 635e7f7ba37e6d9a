// SVG emission
